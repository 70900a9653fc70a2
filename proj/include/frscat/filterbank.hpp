#pragma once

#include <vector>

#include "frscat/grid.hpp"

namespace frscat {

/// Bank geometry and Morlet parameters. Defaults follow the FrameworkI
/// configuration: K = 8 angles, sigma_phi = 0.7, sigma_psi = 0.5, three
/// layers (max_order = 2). num_scales is exposed as a free parameter with
/// default 5, which gives the 681-path feature length.
struct FilterBankSpec {
    int num_scales = 5;  // S
    int num_angles = 8;  // K
    double sigma_phi = 0.7;
    double sigma_psi = 0.5;
    int grid_width = 0;
    int grid_height = 0;
    int max_order = 2;  // deepest scattering layer

    void validate() const;  // throws std::invalid_argument
};

/// Frequency-domain filters sampled on the DFT grid of (grid_width,
/// grid_height): a real Gaussian low-pass phi_hat and num_scales x num_angles
/// Morlet band-passes, all whole-bank peak normalized so that the
/// Littlewood-Paley sum never exceeds 1. Immutable once built.
struct FilterBank {
    ComplexImage phi_hat;
    std::vector<std::vector<ComplexImage>> psi_hat;  // [scale][angle]
    FilterBankSpec spec;
};

/// Frame-condition measurement: min/max of the Littlewood-Paley sum and
/// epsilon = 1 - min after peak normalization.
struct LPReport {
    double min_sum = 0.0;
    double max_sum = 0.0;
    double epsilon = 0.0;
};

FilterBank build_morlet_bank(const FilterBankSpec& spec);

/// Littlewood-Paley sum LP(w) = |phi_hat(w)|^2 + sum_{j,k} (|psi_hat(w)|^2 +
/// |psi_hat(-w)|^2); the reflected terms account for the conjugate atoms real
/// signals see. Returned as an image in DFT bin layout.
RealImage littlewood_paley_map(const FilterBank& bank);

/// min over the centered frequency disc of relative radius 7/8 (corners and
/// the outer annulus are never covered by a finite rotation set), max over
/// the full grid, epsilon = 1 - min.
LPReport littlewood_paley(const FilterBank& bank);

/// True when the signed bin (kx, ky) lies inside the 7/8 measurement disc.
bool in_lp_disc(int kx, int ky, int width, int height);

}  // namespace frscat
