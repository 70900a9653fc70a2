#pragma once

#include <memory>
#include <vector>

#include "frscat/filterbank.hpp"
#include "frscat/grid.hpp"

namespace frscat {

/// Forward/backward modulation chirps for one (grid, orders) key. Cached and
/// shared: chirp synthesis is a hot path when sweeping many order settings
/// over thousands of patches. Immutable after construction.
struct ChirpPair {
    ComplexImage plus;   // exp(+i/2 ...)
    ComplexImage minus;  // exp(-i/2 ...)
};

/// Thread-safe process-wide cache, keyed by (width, height, alpha1, alpha2).
std::shared_ptr<const ChirpPair> cached_chirps(int width, int height,
                                               const FractionalOrderPair& orders);

/// Fractional convolution: demodulate(convolve(modulate(x), h)). The filter
/// is given by its frequency-domain samples; at orders (1,1) the result is
/// exactly the classical circular FFT convolution.
ComplexImage frac_convolve(const ComplexImage& x, const ComplexImage& h_hat,
                           const FractionalOrderPair& orders);

/// One full level of the fractional wavelet transform.
struct FrwtOutput {
    ComplexImage lowpass;
    std::vector<std::vector<ComplexImage>> bandpass;  // [scale][angle]
    FractionalOrderPair orders;
};

/// Applies frac_convolve against phi_hat and every band-pass atom, sharing a
/// single forward transform of the modulated input across all channels.
FrwtOutput frwt(const ComplexImage& x, const FilterBank& bank, const FractionalOrderPair& orders);

}  // namespace frscat
