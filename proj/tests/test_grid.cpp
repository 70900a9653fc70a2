#include <cmath>
#include <numbers>

#include "doctest.h"

#include "frscat/grid.hpp"
#include "frscat/rng.hpp"
#include "oracles.hpp"

using namespace frscat;

namespace {

double rel_diff(const ComplexImage& a, const ComplexImage& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a.data[i] - b.data[i]);
        den += std::norm(b.data[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

TEST_CASE("chirp at unit orders is exactly all ones") {
    ComplexImage c = chirp(8, 8, {1.0, 1.0}, +1);
    for (const auto& z : c.data) {
        CHECK(z.real() == 1.0);
        CHECK(z.imag() == 0.0);
    }
}

TEST_CASE("chirp samples have unit modulus") {
    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        FractionalOrderPair orders{rng.uniform(0.05, 1.95), rng.uniform(0.05, 1.95)};
        int w = 3 + static_cast<int>(rng.below(14));
        int h = 3 + static_cast<int>(rng.below(14));
        ComplexImage c = chirp(w, h, orders, rng.below(2) ? +1 : -1);
        for (const auto& z : c.data) CHECK(std::abs(std::abs(z) - 1.0) < 1e-14);
    }
}

TEST_CASE("chirp matches the per-sample scalar formula") {
    // alpha1 = 1 kills the row dependence
    ComplexImage c = chirp(4, 4, {1.0, 0.7}, +1);
    double cot = std::tan((1.0 - 0.7) * std::numbers::pi / 2.0);
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col) {
            double u2 = (col - 2) / 2.0;
            cplx expect(std::cos(0.5 * cot * u2 * u2), std::sin(0.5 * cot * u2 * u2));
            CHECK(std::abs(c.at(r, col) - expect) < 1e-15);
            CHECK(c.at(r, col) == c.at(0, col));  // independent of u1
        }
}

TEST_CASE("chirp rejects orders outside (0, 2)") {
    CHECK_THROWS_AS(chirp(4, 4, {0.0, 1.0}, +1), std::invalid_argument);
    CHECK_THROWS_AS(chirp(4, 4, {1.0, 2.0}, +1), std::invalid_argument);
    CHECK_THROWS_AS(chirp(4, 4, {-0.3, 1.0}, +1), std::invalid_argument);
    CHECK_THROWS_AS(chirp(4, 4, {1.0, 2.4}, +1), std::invalid_argument);
    CHECK_THROWS_AS(cot_theta(2.0), std::invalid_argument);
}

TEST_CASE("chirp multiplication preserves the L2 norm") {
    Rng rng(11);
    ComplexImage x = oracle::random_complex_image(16, 16, rng);
    ComplexImage c = chirp(16, 16, {0.4, 1.3}, +1);
    ComplexImage y = hadamard(c, x);
    CHECK(std::abs(l2_norm(y) - l2_norm(x)) < 1e-12 * l2_norm(x));
}

TEST_CASE("forward and backward chirps cancel") {
    ComplexImage p = chirp(12, 9, {0.7, 1.9}, +1);
    ComplexImage m = chirp(12, 9, {0.7, 1.9}, -1);
    ComplexImage prod = hadamard(p, m);
    for (const auto& z : prod.data) {
        CHECK(std::abs(z.real() - 1.0) < 1e-12);
        CHECK(std::abs(z.imag()) < 1e-12);
    }
}

TEST_CASE("modulus basics") {
    ComplexImage zero(5, 4);
    RealImage mz = modulus(zero);
    for (double v : mz.data) CHECK(v == 0.0);

    ComplexImage pyth(3, 3);
    for (auto& z : pyth.data) z = cplx(3.0, 4.0);
    RealImage mp = modulus(pyth);
    for (double v : mp.data) CHECK(v == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("modulus preserves the L2 norm") {
    Rng rng(13);
    ComplexImage x = oracle::random_complex_image(16, 16, rng);
    CHECK(std::abs(l2_norm(modulus(x)) - l2_norm(x)) < 1e-12 * l2_norm(x));
}

TEST_CASE("modulus is idempotent on nonnegative real input") {
    Rng rng(17);
    RealImage x = oracle::random_image(9, 7, rng);
    for (auto& v : x.data) v = std::abs(v);
    RealImage once = modulus(to_complex(x));
    RealImage twice = modulus(to_complex(once));
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(once.data[i] == twice.data[i]);
}

TEST_CASE("delta spectrum is flat with unitary magnitude") {
    ComplexImage x(8, 8);
    x.at(0, 0) = cplx(1.0, 0.0);
    ComplexImage s = spectrum(x);
    for (const auto& z : s.data) {
        CHECK(z.real() == doctest::Approx(1.0 / 8.0).epsilon(1e-13));
        CHECK(std::abs(z.imag()) < 1e-14);
    }
}

TEST_CASE("spectrum round trip and Parseval") {
    Rng rng(19);
    for (auto [w, h] : {std::pair{32, 32}, std::pair{12, 7}, std::pair{5, 5}, std::pair{1, 16}}) {
        ComplexImage x = oracle::random_complex_image(w, h, rng);
        ComplexImage back = inverse_spectrum(spectrum(x));
        CHECK(rel_diff(back, x) < 1e-12);
        CHECK(std::abs(l2_norm(spectrum(x)) - l2_norm(x)) < 1e-12 * l2_norm(x));
    }
}

TEST_CASE("spectrum matches the direct-summation transform") {
    Rng rng(23);
    for (auto [w, h] : {std::pair{8, 8}, std::pair{6, 10}, std::pair{7, 5}}) {
        ComplexImage x = oracle::random_complex_image(w, h, rng);
        CHECK(rel_diff(spectrum(x), oracle::naive_dft(x, false)) < 1e-12);
        CHECK(rel_diff(inverse_spectrum(x), oracle::naive_dft(x, true)) < 1e-12);
    }
}
