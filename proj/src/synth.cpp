#include "frscat/synth.hpp"

#include <cmath>

namespace frscat {

namespace {

double signed_bin(int k, int n) { return static_cast<double>(k > (n - 1) / 2 ? k - n : k); }

}  // namespace

RealImage band_limited_noise(int width, int height, double r_lo, double r_hi, Rng& rng) {
    ComplexImage spec(width, height);
    for (int ky = 0; ky < height; ++ky) {
        double ny = signed_bin(ky, height) / (static_cast<double>(height) / 2.0);
        for (int kx = 0; kx < width; ++kx) {
            double nx = signed_bin(kx, width) / (static_cast<double>(width) / 2.0);
            double r = std::sqrt(nx * nx + ny * ny);
            // draw unconditionally so the stream position is independent of
            // the annulus bounds
            double re = rng.normal(), im = rng.normal();
            if (r >= r_lo && r <= r_hi) spec.at(ky, kx) = cplx(re, im);
        }
    }
    ComplexImage field = inverse_spectrum(spec);
    RealImage out(width, height);
    for (std::size_t i = 0; i < out.size(); ++i) out.data[i] = field.data[i].real();

    double mean = 0.0;
    for (double v : out.data) mean += v;
    mean /= static_cast<double>(out.size());
    double var = 0.0;
    for (auto& v : out.data) {
        v -= mean;
        var += v * v;
    }
    var /= static_cast<double>(out.size());
    if (var > 0.0) {
        double inv = 1.0 / std::sqrt(var);
        for (auto& v : out.data) v *= inv;
    }
    return out;
}

RealImage chirp_modulated_noise(int width, int height, double r_lo, double r_hi,
                                const FractionalOrderPair& alpha_mod, Rng& rng) {
    RealImage base = band_limited_noise(width, height, r_lo, r_hi, rng);
    double c1 = cot_theta(alpha_mod.alpha1);
    double c2 = cot_theta(alpha_mod.alpha2);
    double inv_h = 1.0 / std::sqrt(static_cast<double>(height));
    double inv_w = 1.0 / std::sqrt(static_cast<double>(width));
    for (int r = 0; r < height; ++r) {
        double u1 = static_cast<double>(r - height / 2) * inv_h;
        for (int c = 0; c < width; ++c) {
            double u2 = static_cast<double>(c - width / 2) * inv_w;
            base.at(r, c) *= std::cos(0.5 * (c1 * u1 * u1 + c2 * u2 * u2));
        }
    }
    return base;
}

}  // namespace frscat
