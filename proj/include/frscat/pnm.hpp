#pragma once

#include <string>
#include <vector>

#include "frscat/grid.hpp"
#include "frscat/mask.hpp"

namespace frscat {

/// Binary PGM/PPM readers. 8-bit P5 yields one channel, 8-bit P6 three
/// (R, G, B); raw byte values are kept as doubles in [0, 255]. Throws
/// io_error on missing files or malformed headers.
std::vector<RealImage> read_image(const std::string& path);

/// 8-bit binary PGM. Values are clamped to [0, 255] and rounded.
void write_pgm8(const std::string& path, const RealImage& img);

/// Rescales [lo, hi] to the full byte range before writing; callers record
/// (lo, hi) in a sidecar when the scale matters.
void write_pgm8_scaled(const std::string& path, const RealImage& img, double lo, double hi);

/// Instance masks travel as binary P5 with maxval 65535, pixel value ==
/// object id, most significant byte first. 8-bit P5 files are accepted on
/// read for convenience.
InstanceMask read_mask(const std::string& path);
void write_mask(const std::string& path, const InstanceMask& mask);

}  // namespace frscat
