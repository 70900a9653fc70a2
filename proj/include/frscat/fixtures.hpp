#pragma once

#include <string>
#include <vector>

#include "frscat/grid.hpp"
#include "frscat/mask.hpp"

namespace frscat {

/// The bundled desk-scale fixture set: four band-limited stationary noise
/// textures (class 0) and four chirp-modulated ones (class 1), 64x64, with
/// all-background / all-foreground masks. Deterministic in the seed; the
/// same generator backs the `fixtures` CLI command and the test suites.
struct FixtureImage {
    std::string stem;
    int label = 0;
    RealImage texture;   // float field before quantization
    InstanceMask mask;
};

struct FixtureSet {
    std::uint64_t seed = 0;
    int width = 0;
    int height = 0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    FractionalOrderPair modulation;
    std::vector<FixtureImage> images;
};

inline constexpr std::uint64_t kFixtureSeed = 20240902;

FixtureSet make_fixture_set(std::uint64_t seed = kFixtureSeed);

/// Writes <stem>.pgm, <stem>_mask.pgm for every image plus manifest.json
/// into dir (which must exist).
void write_fixture_set(const FixtureSet& set, const std::string& dir);

/// Separation thresholds recorded in the manifest. The values were frozen
/// from the first-order feature-separation sweep over the 18-pair order grid
/// on this exact fixture set (see manifest.json's "separation" block).
struct FixtureSeparation {
    double ratio_at_unit_orders;
    double best_ratio_nonunit;
    double best_alpha1;
    double best_alpha2;
};
FixtureSeparation fixture_separation_thresholds();

}  // namespace frscat
