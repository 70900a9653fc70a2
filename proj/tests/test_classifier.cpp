#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "frscat/classifier.hpp"
#include "frscat/errors.hpp"
#include "oracles.hpp"

using namespace frscat;

namespace {

std::string temp_path(const char* stem) {
    return (std::filesystem::temp_directory_path() / stem).string();
}

// synthetic tensor: one order setting per mean shift, two Gaussian classes
FeatureTensor gaussian_tensor(std::size_t L, std::size_t per_class, double separation,
                              std::size_t settings, Rng& rng) {
    FeatureTensor t;
    t.length = L;
    t.count = 2 * per_class;
    t.settings = settings;
    for (std::size_t d = 0; d < settings; ++d)
        t.order_grid.push_back({1.0, 0.4 + 0.2 * static_cast<double>(d)});
    t.values.resize(L * t.count * settings);
    t.labels.resize(t.count);
    for (std::size_t n = 0; n < t.count; ++n) t.labels[n] = n < per_class ? 0 : 1;
    for (std::size_t d = 0; d < settings; ++d)
        for (std::size_t n = 0; n < t.count; ++n) {
            double shift = t.labels[n] == 0 ? 0.0 : separation;
            for (std::size_t l = 0; l < L; ++l)
                t.at(d, n, l) = rng.normal() + (l == 0 ? shift : 0.0);
        }
    return t;
}

std::vector<const double*> column_ptrs(const std::vector<std::vector<double>>& cols) {
    std::vector<const double*> out;
    for (const auto& c : cols) out.push_back(c.data());
    return out;
}

}  // namespace

TEST_CASE("toy class: mean and sign-fixed basis") {
    std::vector<std::vector<double>> pts{{0.0, 0.0}, {2.0, 0.0}};
    PcaClassModel m = train_pca(column_ptrs(pts), 2, 1, 7);
    CHECK(m.class_id == 7);
    CHECK(m.mean[0] == doctest::Approx(1.0));
    CHECK(m.mean[1] == doctest::Approx(0.0));
    REQUIRE(m.dims == 1);
    CHECK(m.basis[0] == doctest::Approx(1.0));  // sign convention picks +e1
    CHECK(std::abs(m.basis[1]) < 1e-12);
}

TEST_CASE("points in a d-dimensional affine subspace are reconstructed") {
    Rng rng(401);
    const std::size_t L = 10, N = 40;
    const int d = 3;
    std::vector<std::vector<double>> span(d, std::vector<double>(L));
    for (auto& v : span)
        for (auto& x : v) x = rng.normal();
    std::vector<double> offset(L);
    for (auto& x : offset) x = rng.normal();

    std::vector<std::vector<double>> pts(N, std::vector<double>(L));
    for (auto& p : pts) {
        double c[3] = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        for (std::size_t l = 0; l < L; ++l) {
            p[l] = offset[l];
            for (int k = 0; k < d; ++k) p[l] += c[k] * span[static_cast<std::size_t>(k)][l];
        }
    }

    PcaClassModel m = train_pca(column_ptrs(pts), L, d, 0);
    REQUIRE(m.dims == 3);
    for (const auto& p : pts) {
        Classification res = classify(p.data(), L, {m});
        CHECK(res.errors[0] <= 1e-8);
    }
}

TEST_CASE("train_pca matches the dense eigensolver oracle") {
    Rng rng(409);
    const std::size_t L = 10, N = 50;
    std::vector<std::vector<double>> pts(N, std::vector<double>(L));
    for (auto& p : pts)
        for (auto& v : p) v = rng.normal();

    PcaClassModel m = train_pca(column_ptrs(pts), L, 3, 0);

    // oracle: dense covariance + Jacobi
    std::vector<double> mean(L, 0.0);
    for (const auto& p : pts)
        for (std::size_t l = 0; l < L; ++l) mean[l] += p[l] / static_cast<double>(N);
    std::vector<double> cov(L * L, 0.0);
    for (const auto& p : pts)
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t j = 0; j < L; ++j)
                cov[i * L + j] += (p[i] - mean[i]) * (p[j] - mean[j]) / static_cast<double>(N - 1);
    auto sys = oracle::jacobi_eigen(cov, L);

    for (std::size_t l = 0; l < L; ++l) CHECK(m.mean[l] == doctest::Approx(mean[l]).epsilon(1e-12));
    for (int k = 0; k < 3; ++k) {
        // compare up to the shared sign convention
        std::vector<double> oracle_col(L);
        for (std::size_t i = 0; i < L; ++i) oracle_col[i] = sys.vectors[i * L + static_cast<std::size_t>(k)];
        std::size_t arg = 0;
        for (std::size_t i = 1; i < L; ++i)
            if (std::abs(oracle_col[i]) > std::abs(oracle_col[arg])) arg = i;
        if (oracle_col[arg] < 0.0)
            for (auto& v : oracle_col) v = -v;
        for (std::size_t i = 0; i < L; ++i)
            CHECK(m.basis[static_cast<std::size_t>(k) * L + i] == doctest::Approx(oracle_col[i]).epsilon(1e-8));
    }
}

TEST_CASE("gram route agrees with the direct covariance oracle") {
    Rng rng(419);
    const std::size_t L = 50, N = 10;  // L > N forces the Gram path
    std::vector<std::vector<double>> pts(N, std::vector<double>(L));
    for (auto& p : pts)
        for (auto& v : p) v = rng.normal();
    PcaClassModel m = train_pca(column_ptrs(pts), L, 2, 0);
    REQUIRE(m.dims == 2);

    std::vector<double> mean(L, 0.0);
    for (const auto& p : pts)
        for (std::size_t l = 0; l < L; ++l) mean[l] += p[l] / static_cast<double>(N);
    std::vector<double> cov(L * L, 0.0);
    for (const auto& p : pts)
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t j = 0; j < L; ++j)
                cov[i * L + j] += (p[i] - mean[i]) * (p[j] - mean[j]) / static_cast<double>(N - 1);
    auto sys = oracle::jacobi_eigen(cov, L);
    for (int k = 0; k < 2; ++k) {
        std::vector<double> oracle_col(L);
        for (std::size_t i = 0; i < L; ++i) oracle_col[i] = sys.vectors[i * L + static_cast<std::size_t>(k)];
        std::size_t arg = 0;
        for (std::size_t i = 1; i < L; ++i)
            if (std::abs(oracle_col[i]) > std::abs(oracle_col[arg])) arg = i;
        if (oracle_col[arg] < 0.0)
            for (auto& v : oracle_col) v = -v;
        for (std::size_t i = 0; i < L; ++i)
            CHECK(m.basis[static_cast<std::size_t>(k) * L + i] == doctest::Approx(oracle_col[i]).epsilon(1e-8));
    }
}

TEST_CASE("train_pca contract violations") {
    std::vector<std::vector<double>> one{{1.0, 2.0}};
    CHECK_THROWS_AS(train_pca(column_ptrs(one), 2, 1, 0), std::invalid_argument);

    std::vector<std::vector<double>> two{{1.0, 2.0}, {3.0, 4.0}};
    CHECK_THROWS_AS(train_pca(column_ptrs(two), 2, 2, 0), std::invalid_argument);  // d > N-1

    std::vector<std::vector<double>> same{{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}};
    CHECK_THROWS_WITH_AS(train_pca(column_ptrs(same), 2, 1, 9), doctest::Contains("9"),
                         std::invalid_argument);
}

TEST_CASE("classify: exact mean wins with zero error") {
    std::vector<std::vector<double>> a{{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.3}};
    std::vector<std::vector<double>> b{{5.0, 5.0}, {6.0, 5.0}, {5.5, 5.3}};
    PcaClassModel ma = train_pca(column_ptrs(a), 2, 1, 0);
    PcaClassModel mb = train_pca(column_ptrs(b), 2, 1, 1);
    Classification res = classify(ma.mean.data(), 2, {ma, mb});
    CHECK(res.label == 0);
    CHECK(res.errors[0] <= 1e-12);
    CHECK(res.errors[1] > 1.0);
}

TEST_CASE("classify: point on a subspace has zero residual there") {
    PcaClassModel m1;
    m1.class_id = 1;
    m1.length = 3;
    m1.dims = 1;
    m1.mean = {0.0, 0.0, 0.0};
    m1.basis = {1.0, 0.0, 0.0};
    PcaClassModel m2 = m1;
    m2.class_id = 2;
    m2.basis = {0.0, 1.0, 0.0};
    std::vector<double> x{3.0, 0.0, 0.0};
    Classification res = classify(x.data(), 3, {m1, m2});
    CHECK(res.label == 1);
    CHECK(res.errors[0] <= 1e-12);
    CHECK(res.errors[1] == doctest::Approx(3.0));
}

TEST_CASE("classify matches the least-squares oracle") {
    Rng rng(421);
    const std::size_t L = 12;
    std::vector<std::vector<double>> pts(20, std::vector<double>(L));
    for (auto& p : pts)
        for (auto& v : p) v = rng.normal();
    PcaClassModel m = train_pca(column_ptrs(pts), L, 4, 0);
    for (int it = 0; it < 10; ++it) {
        std::vector<double> x(L);
        for (auto& v : x) v = rng.normal();
        Classification res = classify(x.data(), L, {m});
        double expect = oracle::lstsq_residual(x, m.mean, m.basis, L, m.dims);
        CHECK(res.errors[0] == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("classification is invariant under a global rotation") {
    Rng rng(431);
    const std::size_t L = 6;
    // random orthogonal matrix via Gram-Schmidt
    std::vector<std::vector<double>> q(L, std::vector<double>(L));
    for (auto& row : q)
        for (auto& v : row) v = rng.normal();
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double dot = 0.0;
            for (std::size_t l = 0; l < L; ++l) dot += q[i][l] * q[j][l];
            for (std::size_t l = 0; l < L; ++l) q[i][l] -= dot * q[j][l];
        }
        double n = 0.0;
        for (double v : q[i]) n += v * v;
        n = std::sqrt(n);
        for (auto& v : q[i]) v /= n;
    }
    auto rotate = [&](const std::vector<double>& v) {
        std::vector<double> out(L, 0.0);
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t l = 0; l < L; ++l) out[i] += q[i][l] * v[l];
        return out;
    };

    std::vector<std::vector<double>> a(8, std::vector<double>(L)), b(8, std::vector<double>(L));
    for (auto& p : a)
        for (auto& v : p) v = rng.normal();
    for (auto& p : b)
        for (auto& v : p) v = rng.normal() + 2.0;
    PcaClassModel ma = train_pca(column_ptrs(a), L, 2, 0);
    PcaClassModel mb = train_pca(column_ptrs(b), L, 2, 1);

    std::vector<std::vector<double>> ra, rb;
    for (const auto& p : a) ra.push_back(rotate(p));
    for (const auto& p : b) rb.push_back(rotate(p));
    PcaClassModel rma = train_pca(column_ptrs(ra), L, 2, 0);
    PcaClassModel rmb = train_pca(column_ptrs(rb), L, 2, 1);

    for (int it = 0; it < 8; ++it) {
        std::vector<double> x(L);
        for (auto& v : x) v = rng.normal();
        Classification plain = classify(x.data(), L, {ma, mb});
        auto rx = rotate(x);
        Classification rotated = classify(rx.data(), L, {rma, rmb});
        CHECK(plain.errors[0] == doctest::Approx(rotated.errors[0]).epsilon(1e-8));
        CHECK(plain.errors[1] == doctest::Approx(rotated.errors[1]).epsilon(1e-8));
    }
}

TEST_CASE("projection never increases the residual") {
    Rng rng(433);
    const std::size_t L = 9;
    std::vector<std::vector<double>> pts(12, std::vector<double>(L));
    for (auto& p : pts)
        for (auto& v : p) v = rng.normal();
    PcaClassModel m = train_pca(column_ptrs(pts), L, 3, 0);
    for (int it = 0; it < 20; ++it) {
        std::vector<double> x(L);
        for (auto& v : x) v = rng.normal();
        Classification res = classify(x.data(), L, {m});
        double dist = 0.0;
        for (std::size_t l = 0; l < L; ++l) dist += (x[l] - m.mean[l]) * (x[l] - m.mean[l]);
        CHECK(res.errors[0] >= 0.0);
        CHECK(res.errors[0] <= std::sqrt(dist) + 1e-10);
    }
}

TEST_CASE("argmin label is scale invariant") {
    Rng rng(439);
    const std::size_t L = 5;
    std::vector<std::vector<double>> a(6, std::vector<double>(L)), b(6, std::vector<double>(L));
    for (auto& p : a)
        for (auto& v : p) v = rng.normal();
    for (auto& p : b)
        for (auto& v : p) v = rng.normal() + 1.5;
    const double s = 37.5;
    std::vector<std::vector<double>> sa = a, sb = b;
    for (auto& p : sa)
        for (auto& v : p) v *= s;
    for (auto& p : sb)
        for (auto& v : p) v *= s;
    auto m0 = train_pca(column_ptrs(a), L, 2, 0);
    auto m1 = train_pca(column_ptrs(b), L, 2, 1);
    auto n0 = train_pca(column_ptrs(sa), L, 2, 0);
    auto n1 = train_pca(column_ptrs(sb), L, 2, 1);
    for (int it = 0; it < 10; ++it) {
        std::vector<double> x(L), sx(L);
        for (std::size_t l = 0; l < L; ++l) {
            x[l] = rng.normal();
            sx[l] = s * x[l];
        }
        CHECK(classify(x.data(), L, {m0, m1}).label == classify(sx.data(), L, {n0, n1}).label);
    }
}

TEST_CASE("evaluate: far-separated blobs give zero error everywhere") {
    Rng rng(443);
    FeatureTensor t = gaussian_tensor(8, 40, 60.0, 3, rng);
    EvalProtocol protocol;
    protocol.train_ratio = 0.5;
    protocol.repetitions = 3;
    protocol.pca_dims = {2, 4, 8};
    protocol.seed = 99;
    ErrorTable table = evaluate(t, protocol);
    for (double v : table.mean_error) CHECK(v == 0.0);
    for (double v : table.per_order_min) CHECK(v == 0.0);
}

TEST_CASE("evaluate: shuffled labels hover near chance") {
    Rng rng(449);
    FeatureTensor t = gaussian_tensor(8, 250, 0.0, 1, rng);
    Rng shuffler(7);
    shuffler.shuffle(t.labels);
    EvalProtocol protocol;
    protocol.train_ratio = 0.5;
    protocol.repetitions = 5;
    protocol.pca_dims = {4};
    protocol.seed = 1234;
    ErrorTable table = evaluate(t, protocol);
    CHECK(table.cell(0, 0) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("evaluate: identical features for both classes stays near chance, no crash") {
    Rng rng(457);
    FeatureTensor t = gaussian_tensor(6, 30, 0.0, 1, rng);
    // mirror class 0 samples into class 1 so both classes carry the same data
    for (std::size_t n = 0; n < 30; ++n)
        for (std::size_t l = 0; l < t.length; ++l) t.at(0, n + 30, l) = t.at(0, n, l);
    EvalProtocol protocol;
    protocol.train_ratio = 0.5;
    protocol.repetitions = 4;
    protocol.pca_dims = {3};
    protocol.seed = 5;
    ErrorTable table = evaluate(t, protocol);
    CHECK(table.cell(0, 0) > 0.3);
    CHECK(table.cell(0, 0) < 0.7);
}

TEST_CASE("classify: exact ties go to the lowest class id") {
    PcaClassModel a;
    a.class_id = 4;
    a.length = 2;
    a.dims = 0;
    a.mean = {1.0, 1.0};
    PcaClassModel b = a;
    b.class_id = 2;
    std::vector<double> x{0.0, 0.0};
    Classification res = classify(x.data(), 2, {a, b});
    CHECK(res.errors[0] == res.errors[1]);
    CHECK(res.label == 2);
}

TEST_CASE("evaluate: identical seeds give bit-identical tables") {
    Rng rng(461);
    FeatureTensor t = gaussian_tensor(6, 30, 1.0, 2, rng);
    EvalProtocol protocol;
    protocol.train_ratio = 0.5;
    protocol.repetitions = 4;
    protocol.pca_dims = {2, 5};
    protocol.seed = 31337;
    ErrorTable a = evaluate(t, protocol);
    ErrorTable b = evaluate(t, protocol);
    REQUIRE(a.mean_error.size() == b.mean_error.size());
    for (std::size_t i = 0; i < a.mean_error.size(); ++i)
        CHECK(std::memcmp(&a.mean_error[i], &b.mean_error[i], sizeof(double)) == 0);
}

TEST_CASE("evaluate: a class with one sample is a shape error naming it") {
    Rng rng(463);
    FeatureTensor t = gaussian_tensor(4, 10, 1.0, 1, rng);
    t.labels.back() = 2;  // lone member of class 2
    EvalProtocol protocol;
    protocol.pca_dims = {2};
    protocol.seed = 1;
    CHECK_THROWS_WITH_AS(evaluate(t, protocol), doctest::Contains("2"), shape_error);
}

TEST_CASE("protocol validation") {
    EvalProtocol p;
    p.pca_dims = {1};
    p.train_ratio = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.train_ratio = 0.5;
    p.repetitions = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.repetitions = 1;
    p.pca_dims = {};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("model container round trip") {
    Rng rng(467);
    std::vector<std::vector<double>> a(6, std::vector<double>(5)), b(6, std::vector<double>(5));
    for (auto& p : a)
        for (auto& v : p) v = rng.normal();
    for (auto& p : b)
        for (auto& v : p) v = rng.normal() + 3.0;
    std::vector<PcaClassModel> models{train_pca(column_ptrs(a), 5, 2, 0),
                                      train_pca(column_ptrs(b), 5, 2, 1)};
    std::string path = temp_path("frsm_roundtrip.frsm");
    save_models(models, path);
    auto back = load_models(path);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back[i].class_id == models[i].class_id);
        CHECK(back[i].dims == models[i].dims);
        CHECK(back[i].mean == models[i].mean);
        CHECK(back[i].basis == models[i].basis);
    }
    std::remove(path.c_str());

    std::ofstream bad(path, std::ios::binary);
    bad << "NOPE";
    bad.close();
    CHECK_THROWS_WITH_AS(load_models(path), doctest::Contains("FRSM"), io_error);
    std::remove(path.c_str());
}
