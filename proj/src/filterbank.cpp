#include "frscat/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace frscat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kXi = 3.0 * kPi / 4.0;  // center frequency of the finest-scale atom

// Anisotropic Gaussian envelope in the filter frame: std 1/sigma along the
// oscillation direction, slant/sigma across it.
double gauss_hat(double v1, double v2, double sigma, double slant) {
    double s2 = sigma * sigma;
    return std::exp(-0.5 * (s2 * v1 * v1 + (s2 / (slant * slant)) * v2 * v2));
}

// Morlet prototype at scale 0 evaluated at angular frequency (wx, wy) in the
// frame of an atom pointing along `theta`. The beta correction makes the
// value at the origin exactly zero (admissibility).
double morlet_hat(double wx, double wy, double theta, double sigma, double slant) {
    double ct = std::cos(theta), st = std::sin(theta);
    double v1 = ct * wx + st * wy;
    double v2 = -st * wx + ct * wy;
    double beta = gauss_hat(kXi, 0.0, sigma, slant);  // gauss_hat(0,0) == 1
    return gauss_hat(v1 - kXi, v2, sigma, slant) - beta * gauss_hat(v1, v2, sigma, slant);
}

// Signed DFT bin -> angular frequency in [-pi, pi); for even n the Nyquist
// bin n/2 maps to -pi.
double bin_freq(int k, int n) {
    int s = k > (n - 1) / 2 ? k - n : k;
    return 2.0 * kPi * static_cast<double>(s) / static_cast<double>(n);
}

}  // namespace

void FilterBankSpec::validate() const {
    if (num_scales < 1) throw std::invalid_argument("filter bank: num_scales must be >= 1");
    if (num_angles < 1) throw std::invalid_argument("filter bank: num_angles must be >= 1");
    if (!(sigma_phi > 0.0)) throw std::invalid_argument("filter bank: sigma_phi must be > 0");
    if (!(sigma_psi > 0.0)) throw std::invalid_argument("filter bank: sigma_psi must be > 0");
    if (grid_width < 1 || grid_height < 1)
        throw std::invalid_argument("filter bank: grid dimensions must be positive");
    if (max_order < 0) throw std::invalid_argument("filter bank: max_order must be >= 0");
}

FilterBank build_morlet_bank(const FilterBankSpec& spec) {
    spec.validate();
    int min_dim = std::min(spec.grid_width, spec.grid_height);
    int coarsest = 1 << (spec.num_scales - 1);
    if (coarsest > min_dim / 4)
        throw std::invalid_argument(
            "filter bank: grid too small for the coarsest scale: need 2^(S-1) <= min(grid)/4, got 2^(S-1) = " +
            std::to_string(coarsest) + " and min(grid)/4 = " + std::to_string(min_dim / 4));

    FilterBank bank;
    bank.spec = spec;
    double slant = 4.0 / static_cast<double>(spec.num_angles);
    double phi_sigma = spec.sigma_phi * static_cast<double>(1 << (spec.num_scales - 1));

    int w = spec.grid_width, h = spec.grid_height;
    bank.phi_hat = ComplexImage(w, h);
    for (int ky = 0; ky < h; ++ky) {
        double wy = bin_freq(ky, h);
        for (int kx = 0; kx < w; ++kx) {
            double wx = bin_freq(kx, w);
            double r2 = wx * wx + wy * wy;
            bank.phi_hat.at(ky, kx) = cplx(std::exp(-0.5 * phi_sigma * phi_sigma * r2), 0.0);
        }
    }

    bank.psi_hat.assign(static_cast<std::size_t>(spec.num_scales), {});
    for (int j = 0; j < spec.num_scales; ++j) {
        double dilation = static_cast<double>(1 << j);
        auto& row = bank.psi_hat[static_cast<std::size_t>(j)];
        row.reserve(static_cast<std::size_t>(spec.num_angles));
        for (int k = 0; k < spec.num_angles; ++k) {
            double theta = static_cast<double>(k) * kPi / static_cast<double>(spec.num_angles);
            ComplexImage atom(w, h);
            for (int ky = 0; ky < h; ++ky) {
                double wy = bin_freq(ky, h) * dilation;
                for (int kx = 0; kx < w; ++kx) {
                    double wx = bin_freq(kx, w) * dilation;
                    atom.at(ky, kx) = cplx(morlet_hat(wx, wy, theta, spec.sigma_psi, slant), 0.0);
                }
            }
            row.push_back(std::move(atom));
        }
    }

    RealImage lp = littlewood_paley_map(bank);
    double peak = 0.0;
    for (double v : lp.data) peak = std::max(peak, v);
    if (!(peak > 0.0)) throw std::invalid_argument("filter bank: degenerate (all-zero) filters");
    double scale = 1.0 / std::sqrt(peak);
    for (auto& z : bank.phi_hat.data) z *= scale;
    for (auto& scales : bank.psi_hat)
        for (auto& atom : scales)
            for (auto& z : atom.data) z *= scale;
    return bank;
}

RealImage littlewood_paley_map(const FilterBank& bank) {
    int w = bank.phi_hat.width, h = bank.phi_hat.height;
    RealImage lp(w, h);
    for (std::size_t i = 0; i < lp.size(); ++i) lp.data[i] = std::norm(bank.phi_hat.data[i]);
    for (const auto& scales : bank.psi_hat) {
        for (const auto& atom : scales) {
            for (int ky = 0; ky < h; ++ky) {
                int ry = (h - ky) % h;
                for (int kx = 0; kx < w; ++kx) {
                    int rx = (w - kx) % w;
                    lp.at(ky, kx) += std::norm(atom.at(ky, kx)) + std::norm(atom.at(ry, rx));
                }
            }
        }
    }
    return lp;
}

bool in_lp_disc(int kx, int ky, int width, int height) {
    int sx = kx > (width - 1) / 2 ? kx - width : kx;
    int sy = ky > (height - 1) / 2 ? ky - height : ky;
    double nx = static_cast<double>(sx) / (static_cast<double>(width) / 2.0);
    double ny = static_cast<double>(sy) / (static_cast<double>(height) / 2.0);
    return nx * nx + ny * ny <= (7.0 / 8.0) * (7.0 / 8.0);
}

LPReport littlewood_paley(const FilterBank& bank) {
    RealImage lp = littlewood_paley_map(bank);
    LPReport rep;
    rep.min_sum = std::numeric_limits<double>::infinity();
    rep.max_sum = 0.0;
    for (int ky = 0; ky < lp.height; ++ky) {
        for (int kx = 0; kx < lp.width; ++kx) {
            double v = lp.at(ky, kx);
            rep.max_sum = std::max(rep.max_sum, v);
            if (in_lp_disc(kx, ky, lp.width, lp.height)) rep.min_sum = std::min(rep.min_sum, v);
        }
    }
    if (!std::isfinite(rep.min_sum)) rep.min_sum = 0.0;
    rep.epsilon = 1.0 - rep.min_sum;
    return rep;
}

}  // namespace frscat
