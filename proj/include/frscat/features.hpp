#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frscat/filterbank.hpp"
#include "frscat/grid.hpp"
#include "frscat/mask.hpp"
#include "frscat/scattering.hpp"

namespace frscat {

/// One window cut from a labeled source image; 1 (gray) or 3 (color)
/// channels of identical shape. label 1 marks target windows, 0 background.
struct LabeledPatch {
    std::vector<RealImage> channels;
    int label = 0;
    struct Source {
        int image_id = 0;
        int x = 0;  // top-left corner in the source image
        int y = 0;
    } source;
};

/// The characteristic tensor: `values` holds length x count x settings
/// doubles with the order setting slowest, then the signal, then the feature
/// (the same nesting the file format uses). Feature index l = path * channels
/// + channel.
struct FeatureTensor {
    std::size_t length = 0;    // L
    std::size_t count = 0;     // N
    std::size_t settings = 0;  // D
    std::vector<FractionalOrderPair> order_grid;
    std::vector<std::int32_t> labels;
    std::vector<double> values;

    double& at(std::size_t d, std::size_t n, std::size_t l) {
        return values[(d * count + n) * length + l];
    }
    double at(std::size_t d, std::size_t n, std::size_t l) const {
        return values[(d * count + n) * length + l];
    }
    /// Contiguous feature vector of signal n under order setting d.
    const double* signal(std::size_t d, std::size_t n) const {
        return values.data() + (d * count + n) * length;
    }
};

/// Sliding-window extraction: the image and mask are mirror-extended by
/// window/2, candidate centers sit on a regular stride grid, and a window is
/// kept as target when its foreground overlap exceeds `overlap_threshold`,
/// as background when the overlap falls below 1 - overlap_threshold, and is
/// discarded otherwise. stride <= 0 selects the default window/2.
std::vector<LabeledPatch> extract_patches(const std::vector<RealImage>& channels,
                                          const InstanceMask& mask, int window,
                                          double overlap_threshold, int stride = 0,
                                          int image_id = 0);

/// Zero-mean, unit-L2 per channel; constant channels map to all zeros.
LabeledPatch normalize_patch(const LabeledPatch& p);

/// Scatters every patch under every order setting and reduces each
/// coefficient image to its spatial mean, concatenating channels.
FeatureTensor assemble_q(const std::vector<LabeledPatch>& patches, const FilterBank& bank,
                         const std::vector<FractionalOrderPair>& order_grid);

/// The 18 order settings used throughout: (1, a) then (a, 1) for a in
/// {0.05, 0.10, 0.40, 0.70, 1.00, 1.30, 1.60, 1.90, 1.95}. (1, 1) appears
/// twice, once per sweep.
std::vector<FractionalOrderPair> default_order_grid();

/// Binary container (magic "FRSC"); bit-exact round trip.
void save_tensor(const FeatureTensor& tensor, const std::string& path);
FeatureTensor load_tensor(const std::string& path);

/// One row per (setting, signal) with a header row.
void write_tensor_csv(const FeatureTensor& tensor, const std::string& path);

}  // namespace frscat
