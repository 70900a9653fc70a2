#include "frscat/classifier.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>

#include "frscat/errors.hpp"
#include "frscat/parallel.hpp"
#include "frscat/rng.hpp"

namespace frscat {

namespace {

void fix_sign(double* col, std::size_t length) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < length; ++i) {
        double a = std::abs(col[i]);
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (col[arg] < 0.0)
        for (std::size_t i = 0; i < length; ++i) col[i] = -col[i];
}

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}
void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}
void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4) throw io_error("'" + path + "': truncated payload");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}
std::uint64_t get_u64(std::istream& in, const std::string& path) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (in.gcount() != 8) throw io_error("'" + path + "': truncated payload");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

constexpr std::uint32_t kModelVersion = 1;

}  // namespace

void EvalProtocol::validate() const {
    if (!(train_ratio > 0.0 && train_ratio < 1.0))
        throw std::invalid_argument("protocol: train_ratio must lie strictly in (0, 1)");
    if (repetitions < 1) throw std::invalid_argument("protocol: repetitions must be >= 1");
    if (pca_dims.empty()) throw std::invalid_argument("protocol: pca_dims must be non-empty");
    for (int d : pca_dims)
        if (d < 1) throw std::invalid_argument("protocol: pca dimensions must be >= 1");
}

PcaClassModel train_pca(const std::vector<const double*>& samples, std::size_t length, int d,
                        int class_id) {
    std::size_t n = samples.size();
    if (n < 2)
        throw std::invalid_argument("train_pca: class " + std::to_string(class_id) +
                                    " needs at least 2 training samples, got " + std::to_string(n));
    if (length == 0) throw std::invalid_argument("train_pca: zero-length features");
    if (d < 1 || static_cast<std::size_t>(d) > std::min(length, n - 1))
        throw std::invalid_argument("train_pca: dimension " + std::to_string(d) +
                                    " too large for class " + std::to_string(class_id) + " (L=" +
                                    std::to_string(length) + ", N=" + std::to_string(n) + ")");

    PcaClassModel model;
    model.class_id = class_id;
    model.length = length;
    model.mean.assign(length, 0.0);
    for (const double* s : samples)
        for (std::size_t i = 0; i < length; ++i) model.mean[i] += s[i];
    for (auto& v : model.mean) v /= static_cast<double>(n);

    Eigen::MatrixXd centered(length, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < length; ++i)
            centered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                samples[c][i] - model.mean[i];

    double total_var = centered.squaredNorm() / static_cast<double>(n - 1);
    double mean_scale = 0.0;
    for (double v : model.mean) mean_scale += v * v;
    if (total_var <= 1e-24 * std::max(1.0, mean_scale))
        throw std::invalid_argument("train_pca: class " + std::to_string(class_id) +
                                    " training set is degenerate (all samples identical)");

    Eigen::MatrixXd basis;
    Eigen::VectorXd eigvals;
    if (length <= n) {
        Eigen::MatrixXd cov = centered * centered.transpose() / static_cast<double>(n - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
        // ascending order; take the top d from the back
        basis.resize(static_cast<Eigen::Index>(length), d);
        eigvals.resize(d);
        for (int k = 0; k < d; ++k) {
            Eigen::Index src = static_cast<Eigen::Index>(length) - 1 - k;
            basis.col(k) = solver.eigenvectors().col(src);
            eigvals(k) = solver.eigenvalues()(src);
        }
    } else {
        // Gram route for high-dimensional features: eigenvectors of X^T X
        // lift to covariance eigenvectors via X v / ||X v||.
        Eigen::MatrixXd gram = centered.transpose() * centered / static_cast<double>(n - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
        basis.resize(static_cast<Eigen::Index>(length), d);
        eigvals.resize(d);
        for (int k = 0; k < d; ++k) {
            Eigen::Index src = static_cast<Eigen::Index>(n) - 1 - k;
            Eigen::VectorXd u = centered * solver.eigenvectors().col(src);
            double un = u.norm();
            eigvals(k) = solver.eigenvalues()(src);
            if (un > 0.0) u /= un;
            basis.col(k) = u;
        }
    }

    // Drop directions with no numerically significant variance instead of
    // keeping arbitrary vectors from the null space.
    double lead = std::max(eigvals(0), 0.0);
    int keep = 0;
    while (keep < d && eigvals(keep) > 1e-12 * lead && eigvals(keep) > 0.0) ++keep;
    model.dims = static_cast<std::size_t>(keep);
    model.basis.resize(length * model.dims);
    for (int k = 0; k < keep; ++k) {
        for (std::size_t i = 0; i < length; ++i)
            model.basis[static_cast<std::size_t>(k) * length + i] =
                basis(static_cast<Eigen::Index>(i), k);
        fix_sign(model.basis.data() + static_cast<std::size_t>(k) * length, length);
    }
    return model;
}

Classification classify(const double* x, std::size_t length,
                        const std::vector<PcaClassModel>& models) {
    if (models.empty()) throw std::invalid_argument("classify: no models");
    Classification out;
    out.errors.reserve(models.size());
    double best_err = 0.0;
    int best_id = 0;
    bool first = true;
    std::vector<double> resid(length);
    for (const auto& m : models) {
        if (m.length != length) throw shape_error("classify: feature length does not match model");
        for (std::size_t i = 0; i < length; ++i) resid[i] = x[i] - m.mean[i];
        for (std::size_t k = 0; k < m.dims; ++k) {
            const double* col = m.basis.data() + k * length;
            double coeff = 0.0;
            for (std::size_t i = 0; i < length; ++i) coeff += col[i] * resid[i];
            for (std::size_t i = 0; i < length; ++i) resid[i] -= coeff * col[i];
        }
        double err = 0.0;
        for (double v : resid) err += v * v;
        err = std::sqrt(err);
        out.errors.push_back(err);
        if (first || err < best_err || (err == best_err && m.class_id < best_id)) {
            best_err = err;
            best_id = m.class_id;
            first = false;
        }
    }
    out.label = best_id;
    return out;
}

ErrorTable evaluate(const FeatureTensor& tensor, const EvalProtocol& protocol) {
    protocol.validate();
    std::map<std::int32_t, std::vector<std::size_t>> by_class;
    for (std::size_t n = 0; n < tensor.count; ++n) by_class[tensor.labels[n]].push_back(n);
    if (by_class.size() < 2) throw shape_error("evaluate: need at least 2 classes");

    // one split per repetition, shared by every (setting, dim) cell
    struct Split {
        std::map<std::int32_t, std::vector<std::size_t>> train;
        std::vector<std::size_t> test;
    };
    Rng rng(protocol.seed);
    std::vector<Split> splits;
    for (int rep = 0; rep < protocol.repetitions; ++rep) {
        Rng stream = rng.fork(static_cast<std::uint64_t>(rep));
        Split split;
        for (const auto& [cls, members] : by_class) {
            std::vector<std::size_t> idx = members;
            stream.shuffle(idx);
            auto train_n = static_cast<std::size_t>(
                std::lround(protocol.train_ratio * static_cast<double>(idx.size())));
            if (train_n < 2)
                throw shape_error("evaluate: class " + std::to_string(cls) +
                                  " has fewer than 2 training samples after the split");
            if (train_n >= idx.size())
                throw shape_error("evaluate: class " + std::to_string(cls) +
                                  " has no test samples after the split");
            split.train[cls].assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(train_n));
            split.test.insert(split.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(train_n),
                              idx.end());
        }
        std::sort(split.test.begin(), split.test.end());
        splits.push_back(std::move(split));
    }

    ErrorTable table;
    table.order_grid = tensor.order_grid;
    table.pca_dims = protocol.pca_dims;
    std::size_t dims_n = protocol.pca_dims.size();
    table.mean_error.assign(tensor.settings * dims_n, 0.0);

    struct Cell {
        std::size_t setting;
        std::size_t dim_idx;
        int rep;
    };
    std::vector<Cell> cells;
    for (std::size_t d = 0; d < tensor.settings; ++d)
        for (std::size_t k = 0; k < dims_n; ++k)
            for (int rep = 0; rep < protocol.repetitions; ++rep) cells.push_back({d, k, rep});

    std::vector<double> cell_error(cells.size(), 0.0);
    std::exception_ptr failure;
    std::mutex failure_mu;
    parallel_for(cells.size(), [&](std::size_t c) {
        try {
            const Cell& cell = cells[c];
            const Split& split = splits[static_cast<std::size_t>(cell.rep)];
            std::vector<PcaClassModel> models;
            for (const auto& [cls, members] : split.train) {
                std::vector<const double*> cols;
                cols.reserve(members.size());
                for (std::size_t n : members) cols.push_back(tensor.signal(cell.setting, n));
                models.push_back(train_pca(cols, tensor.length, protocol.pca_dims[cell.dim_idx],
                                           static_cast<int>(cls)));
            }
            std::size_t wrong = 0;
            for (std::size_t n : split.test) {
                Classification res = classify(tensor.signal(cell.setting, n), tensor.length, models);
                if (res.label != tensor.labels[n]) ++wrong;
            }
            cell_error[c] = static_cast<double>(wrong) / static_cast<double>(split.test.size());
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);

    for (std::size_t c = 0; c < cells.size(); ++c)
        table.mean_error[cells[c].setting * dims_n + cells[c].dim_idx] +=
            cell_error[c] / static_cast<double>(protocol.repetitions);

    table.per_order_min.assign(tensor.settings, 0.0);
    for (std::size_t d = 0; d < tensor.settings; ++d) {
        double best = table.cell(d, 0);
        for (std::size_t k = 1; k < dims_n; ++k) best = std::min(best, table.cell(d, k));
        table.per_order_min[d] = best;
    }
    return table;
}

void write_error_table_csv(const ErrorTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write csv '" + path + "'");
    out.precision(17);
    out << "alpha1,alpha2";
    for (int d : table.pca_dims) out << ",dim_" << d;
    out << ",min\n";
    for (std::size_t d = 0; d < table.order_grid.size(); ++d) {
        out << table.order_grid[d].alpha1 << "," << table.order_grid[d].alpha2;
        for (std::size_t k = 0; k < table.pca_dims.size(); ++k) out << "," << table.cell(d, k);
        out << "," << table.per_order_min[d] << "\n";
    }
    if (!out) throw io_error("failed writing csv '" + path + "'");
}

void save_models(const std::vector<PcaClassModel>& models, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write models '" + path + "'");
    out.write("FRSM", 4);
    put_u32(out, kModelVersion);
    put_u64(out, models.size());
    for (const auto& m : models) {
        put_u32(out, std::bit_cast<std::uint32_t>(static_cast<std::int32_t>(m.class_id)));
        put_u64(out, m.length);
        put_u64(out, m.dims);
        for (double v : m.mean) put_f64(out, v);
        for (double v : m.basis) put_f64(out, v);
    }
    if (!out) throw io_error("failed writing models '" + path + "'");
}

std::vector<PcaClassModel> load_models(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open models '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, "FRSM", 4) != 0)
        throw io_error("'" + path + "': bad magic, expected FRSM");
    std::uint32_t version = get_u32(in, path);
    if (version != kModelVersion)
        throw io_error("'" + path + "': unsupported model version " + std::to_string(version));
    std::uint64_t count = get_u64(in, path);
    if (count > (std::uint64_t{1} << 20)) throw io_error("'" + path + "': implausible model count");

    std::vector<PcaClassModel> models;
    models.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        PcaClassModel m;
        m.class_id = std::bit_cast<std::int32_t>(get_u32(in, path));
        m.length = get_u64(in, path);
        m.dims = get_u64(in, path);
        if (m.length == 0 || m.length > (std::uint64_t{1} << 31) || m.dims > m.length)
            throw io_error("'" + path + "': implausible model dimensions");
        m.mean.resize(m.length);
        for (auto& v : m.mean) v = std::bit_cast<double>(get_u64(in, path));
        m.basis.resize(m.length * m.dims);
        for (auto& v : m.basis) v = std::bit_cast<double>(get_u64(in, path));
        models.push_back(std::move(m));
    }
    return models;
}

}  // namespace frscat
