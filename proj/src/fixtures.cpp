#include "frscat/fixtures.hpp"

#include <fstream>

#include "json.hpp"

#include "frscat/errors.hpp"
#include "frscat/pnm.hpp"
#include "frscat/rng.hpp"
#include "frscat/synth.hpp"

namespace frscat {

namespace {

constexpr int kSize = 64;
constexpr double kBandLo = 0.12;
constexpr double kBandHi = 0.45;
constexpr FractionalOrderPair kModulation{1.0, 1.35};

// Frozen after measuring the separation sweep on this fixture set; the
// acceptance suite recomputes both values and checks them against these.
constexpr FixtureSeparation kSeparation{1.5603696907, 6.7362899165, 1.0, 0.4};

RealImage quantized(const RealImage& texture) {
    // same mapping the PGM writer applies, so the float field matches the
    // bytes on disk
    RealImage img(texture.width, texture.height);
    for (std::size_t i = 0; i < img.size(); ++i) {
        double v = std::round(texture.data[i] * 32.0 + 128.0);
        img.data[i] = v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v);
    }
    return img;
}

}  // namespace

FixtureSeparation fixture_separation_thresholds() { return kSeparation; }

FixtureSet make_fixture_set(std::uint64_t seed) {
    FixtureSet set;
    set.seed = seed;
    set.width = kSize;
    set.height = kSize;
    set.band_lo = kBandLo;
    set.band_hi = kBandHi;
    set.modulation = kModulation;

    Rng rng(seed);
    for (int i = 0; i < 4; ++i) {
        FixtureImage fi;
        fi.stem = "texture_a_" + std::to_string(i);
        fi.label = 0;
        fi.texture = quantized(band_limited_noise(kSize, kSize, kBandLo, kBandHi, rng));
        fi.mask = InstanceMask(kSize, kSize);  // all background
        set.images.push_back(std::move(fi));
    }
    for (int i = 0; i < 4; ++i) {
        FixtureImage fi;
        fi.stem = "texture_b_" + std::to_string(i);
        fi.label = 1;
        fi.texture = quantized(chirp_modulated_noise(kSize, kSize, kBandLo, kBandHi, kModulation, rng));
        fi.mask = InstanceMask(kSize, kSize);
        for (auto& v : fi.mask.labels) v = 1;  // one object covering the frame
        set.images.push_back(std::move(fi));
    }
    return set;
}

void write_fixture_set(const FixtureSet& set, const std::string& dir) {
    nlohmann::json manifest;
    manifest["seed"] = set.seed;
    manifest["width"] = set.width;
    manifest["height"] = set.height;
    manifest["band"] = {set.band_lo, set.band_hi};
    manifest["modulation"] = {set.modulation.alpha1, set.modulation.alpha2};

    nlohmann::json images = nlohmann::json::array();
    for (const auto& fi : set.images) {
        write_pgm8(dir + "/" + fi.stem + ".pgm", fi.texture);
        write_mask(dir + "/" + fi.stem + "_mask.pgm", fi.mask);
        images.push_back({{"image", fi.stem + ".pgm"},
                          {"mask", fi.stem + "_mask.pgm"},
                          {"label", fi.label}});
    }
    manifest["images"] = images;

    FixtureSeparation sep = fixture_separation_thresholds();
    manifest["separation"] = {{"ratio_at_unit_orders", sep.ratio_at_unit_orders},
                              {"best_ratio_nonunit", sep.best_ratio_nonunit},
                              {"best_orders", {sep.best_alpha1, sep.best_alpha2}}};

    std::ofstream out(dir + "/manifest.json");
    if (!out) throw io_error("cannot write '" + dir + "/manifest.json'");
    out << manifest.dump(2) << "\n";
    if (!out) throw io_error("failed writing fixture manifest");
}

}  // namespace frscat
