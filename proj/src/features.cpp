#include "frscat/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "frscat/errors.hpp"
#include "frscat/parallel.hpp"

namespace frscat {

namespace {

// Symmetric mirror with edge repeat: ... c b a | a b c ... | c b a ...
int mirror_index(int i, int n) {
    int period = 2 * n;
    int m = ((i % period) + period) % period;
    return m < n ? m : period - 1 - m;
}

RealImage mirror_extend(const RealImage& img, int pad) {
    RealImage out(img.width + 2 * pad, img.height + 2 * pad);
    for (int r = 0; r < out.height; ++r) {
        int sr = mirror_index(r - pad, img.height);
        for (int c = 0; c < out.width; ++c)
            out.at(r, c) = img.at(sr, mirror_index(c - pad, img.width));
    }
    return out;
}

void write_bytes(std::ostream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    write_bytes(out, b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    write_bytes(out, b, 8);
}

void put_i32(std::ostream& out, std::int32_t v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

struct Reader {
    std::ifstream in;
    std::string path;

    void read(void* p, std::size_t n) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw io_error("'" + path + "': truncated payload");
    }
    std::uint32_t u32() {
        unsigned char b[4];
        read(b, 4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    std::uint64_t u64() {
        unsigned char b[8];
        read(b, 8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    std::int32_t i32() { return std::bit_cast<std::int32_t>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }
};

constexpr std::uint32_t kTensorVersion = 1;

}  // namespace

std::vector<LabeledPatch> extract_patches(const std::vector<RealImage>& channels,
                                          const InstanceMask& mask, int window,
                                          double overlap_threshold, int stride, int image_id) {
    if (channels.empty()) throw std::invalid_argument("extract_patches: no channels");
    const RealImage& first = channels.front();
    for (const auto& ch : channels)
        if (!ch.same_shape(first)) throw shape_error("extract_patches: channel dimensions differ");
    if (first.width != mask.width || first.height != mask.height)
        throw shape_error("extract_patches: image and mask dimensions differ");
    if (window < 1 || window > first.width || window > first.height)
        throw std::invalid_argument("extract_patches: window larger than image");
    if (!(overlap_threshold > 0.0 && overlap_threshold <= 1.0))
        throw std::invalid_argument("extract_patches: overlap threshold must be in (0, 1]");
    if (stride <= 0) stride = window / 2 > 0 ? window / 2 : 1;

    int pad = window / 2;
    std::vector<RealImage> ext;
    ext.reserve(channels.size());
    for (const auto& ch : channels) ext.push_back(mirror_extend(ch, pad));

    RealImage fg(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.size(); ++i) fg.data[i] = mask.labels[i] > 0 ? 1.0 : 0.0;
    RealImage fg_ext = mirror_extend(fg, pad);

    std::vector<LabeledPatch> out;
    for (int cy = pad; cy < first.height; cy += stride) {
        for (int cx = pad; cx < first.width; cx += stride) {
            // window footprint in extended coordinates
            int top = cy - window / 2 + pad;
            int left = cx - window / 2 + pad;
            double overlap = 0.0;
            for (int r = 0; r < window; ++r)
                for (int c = 0; c < window; ++c) overlap += fg_ext.at(top + r, left + c);
            overlap /= static_cast<double>(window) * window;

            int label;
            if (overlap > overlap_threshold) label = 1;
            else if (overlap < 1.0 - overlap_threshold) label = 0;
            else continue;

            LabeledPatch patch;
            patch.label = label;
            patch.source = {image_id, cx - window / 2, cy - window / 2};
            for (const auto& e : ext) {
                RealImage p(window, window);
                for (int r = 0; r < window; ++r)
                    for (int c = 0; c < window; ++c) p.at(r, c) = e.at(top + r, left + c);
                patch.channels.push_back(std::move(p));
            }
            out.push_back(std::move(patch));
        }
    }
    return out;
}

LabeledPatch normalize_patch(const LabeledPatch& p) {
    if (p.channels.empty() || p.channels.front().size() == 0)
        throw std::invalid_argument("normalize_patch: empty patch");
    LabeledPatch out = p;
    for (auto& ch : out.channels) {
        double mean = 0.0;
        for (double v : ch.data) mean += v;
        mean /= static_cast<double>(ch.size());
        double nsq = 0.0;
        for (auto& v : ch.data) {
            v -= mean;
            nsq += v * v;
        }
        double n = std::sqrt(nsq);
        double tiny = 1e-12 * std::max(1.0, std::abs(mean) * std::sqrt(static_cast<double>(ch.size())));
        if (n <= tiny) {
            for (auto& v : ch.data) v = 0.0;
        } else {
            for (auto& v : ch.data) v /= n;
        }
    }
    return out;
}

FeatureTensor assemble_q(const std::vector<LabeledPatch>& patches, const FilterBank& bank,
                         const std::vector<FractionalOrderPair>& order_grid) {
    if (patches.empty()) throw std::invalid_argument("assemble_q: no patches");
    if (order_grid.empty()) throw std::invalid_argument("assemble_q: empty order grid");
    const auto& shape = patches.front().channels;
    if (shape.empty()) throw std::invalid_argument("assemble_q: patch has no channels");
    for (const auto& p : patches) {
        if (p.channels.size() != shape.size()) throw shape_error("assemble_q: channel counts differ");
        for (const auto& ch : p.channels) {
            if (!ch.same_shape(shape.front())) throw shape_error("assemble_q: patch shapes differ");
            if (!all_finite(ch)) throw std::invalid_argument("assemble_q: patch contains non-finite values");
        }
    }
    if (shape.front().width != bank.spec.grid_width || shape.front().height != bank.spec.grid_height)
        throw shape_error("assemble_q: patch shape does not match the filter bank grid");

    std::size_t channels = shape.size();
    std::size_t num_paths =
        enumerate_paths(bank.spec.num_scales, bank.spec.num_angles, bank.spec.max_order).size();

    FeatureTensor t;
    t.length = num_paths * channels;
    t.count = patches.size();
    t.settings = order_grid.size();
    t.order_grid = order_grid;
    t.labels.resize(t.count);
    for (std::size_t n = 0; n < t.count; ++n) t.labels[n] = patches[n].label;
    t.values.assign(t.length * t.count * t.settings, 0.0);

    double px = static_cast<double>(shape.front().size());
    parallel_for(t.count * t.settings, [&](std::size_t cell) {
        std::size_t n = cell % t.count;
        std::size_t d = cell / t.count;
        for (std::size_t ch = 0; ch < channels; ++ch) {
            ScatteringResult res = scatter(patches[n].channels[ch], bank, order_grid[d]);
            for (std::size_t p = 0; p < res.coefficients.size(); ++p) {
                double sum = 0.0;
                for (double v : res.coefficients[p].data) sum += v;
                t.at(d, n, p * channels + ch) = sum / px;
            }
        }
    });
    return t;
}

std::vector<FractionalOrderPair> default_order_grid() {
    const double sweep[] = {0.05, 0.10, 0.40, 0.70, 1.00, 1.30, 1.60, 1.90, 1.95};
    std::vector<FractionalOrderPair> grid;
    for (double a : sweep) grid.push_back({1.0, a});
    for (double a : sweep) grid.push_back({a, 1.0});
    return grid;
}

void save_tensor(const FeatureTensor& t, const std::string& path) {
    if (t.order_grid.size() != t.settings || t.labels.size() != t.count ||
        t.values.size() != t.length * t.count * t.settings)
        throw shape_error("save_tensor: inconsistent tensor");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write tensor '" + path + "'");
    write_bytes(out, "FRSC", 4);
    put_u32(out, kTensorVersion);
    put_u64(out, t.length);
    put_u64(out, t.count);
    put_u64(out, t.settings);
    for (const auto& o : t.order_grid) {
        put_f64(out, o.alpha1);
        put_f64(out, o.alpha2);
    }
    for (auto label : t.labels) put_i32(out, label);
    for (double v : t.values) put_f64(out, v);
    if (!out) throw io_error("failed writing tensor '" + path + "'");
}

FeatureTensor load_tensor(const std::string& path) {
    Reader r;
    r.path = path;
    r.in.open(path, std::ios::binary);
    if (!r.in) throw io_error("cannot open tensor '" + path + "'");
    char magic[4];
    r.read(magic, 4);
    if (std::memcmp(magic, "FRSC", 4) != 0)
        throw io_error("'" + path + "': bad magic, expected FRSC");
    std::uint32_t version = r.u32();
    if (version != kTensorVersion)
        throw io_error("'" + path + "': unsupported tensor version " + std::to_string(version));

    FeatureTensor t;
    t.length = r.u64();
    t.count = r.u64();
    t.settings = r.u64();
    constexpr std::uint64_t kMaxElems = std::uint64_t{1} << 31;
    if (t.length == 0 || t.count == 0 || t.settings == 0 ||
        t.length > kMaxElems || t.count > kMaxElems || t.settings > kMaxElems ||
        t.length > kMaxElems / t.count / t.settings)
        throw io_error("'" + path + "': implausible tensor dimensions");

    r.in.seekg(0, std::ios::end);
    std::uint64_t file_size = static_cast<std::uint64_t>(r.in.tellg());
    std::uint64_t expected = 4 + 4 + 3 * 8 + t.settings * 16 + t.count * 4 +
                             t.length * t.count * t.settings * 8;
    if (file_size != expected)
        throw io_error("'" + path + "': header dimensions inconsistent with payload length");
    r.in.seekg(4 + 4 + 3 * 8, std::ios::beg);

    t.order_grid.resize(t.settings);
    for (auto& o : t.order_grid) {
        o.alpha1 = r.f64();
        o.alpha2 = r.f64();
    }
    t.labels.resize(t.count);
    for (auto& label : t.labels) label = r.i32();
    t.values.resize(t.length * t.count * t.settings);
    for (auto& v : t.values) v = r.f64();
    return t;
}

void write_tensor_csv(const FeatureTensor& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write csv '" + path + "'");
    out << "setting,alpha1,alpha2,signal,label";
    for (std::size_t l = 0; l < t.length; ++l) out << ",f" << l;
    out << "\n";
    out.precision(17);
    for (std::size_t d = 0; d < t.settings; ++d)
        for (std::size_t n = 0; n < t.count; ++n) {
            out << d << "," << t.order_grid[d].alpha1 << "," << t.order_grid[d].alpha2 << "," << n
                << "," << t.labels[n];
            for (std::size_t l = 0; l < t.length; ++l) out << "," << t.at(d, n, l);
            out << "\n";
        }
    if (!out) throw io_error("failed writing csv '" + path + "'");
}

}  // namespace frscat
