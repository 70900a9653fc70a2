#pragma once

#include "frscat/grid.hpp"
#include "frscat/rng.hpp"

namespace frscat {

/// Stationary band-limited Gaussian texture: random spectrum restricted to
/// the annulus r_lo <= |w|/pi <= r_hi, zero mean, unit RMS.
RealImage band_limited_noise(int width, int height, double r_lo, double r_hi, Rng& rng);

/// The same texture family modulated by a two-axis quadratic-phase cosine
/// whose rates match the sampling convention of chirp(); alpha_mod gives the
/// modulation order per axis (1.0 leaves an axis untouched).
RealImage chirp_modulated_noise(int width, int height, double r_lo, double r_hi,
                                const FractionalOrderPair& alpha_mod, Rng& rng);

}  // namespace frscat
