#pragma once

#include <cstdint>
#include <vector>

namespace frscat {

/// Integer-labeled instance segmentation: 0 is background, positive values
/// are object ids. Ids may be sparse; every referenced id has at least one
/// pixel by construction of the accessors below.
struct InstanceMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> labels;

    InstanceMask() = default;
    InstanceMask(int w, int h) : width(w), height(h), labels(static_cast<std::size_t>(w) * h, 0) {}

    std::uint16_t& at(int row, int col) { return labels[static_cast<std::size_t>(row) * width + col]; }
    std::uint16_t at(int row, int col) const { return labels[static_cast<std::size_t>(row) * width + col]; }
    std::size_t size() const { return labels.size(); }
    bool same_shape(const InstanceMask& o) const { return width == o.width && height == o.height; }
};

struct Pixel {
    int x = 0;
    int y = 0;
    bool operator==(const Pixel&) const = default;
};

/// Ids present in the mask (ascending, background excluded).
std::vector<int> object_ids(const InstanceMask& mask);

/// Pixels carrying the given id.
std::vector<Pixel> object_pixels(const InstanceMask& mask, int id);

}  // namespace frscat
