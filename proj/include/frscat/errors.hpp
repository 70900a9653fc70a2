#pragma once

#include <stdexcept>
#include <string>

namespace frscat {

/// File and stream failures (missing file, bad magic, truncated payload).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally inconsistent data (dimension mismatches, bad splits).
struct shape_error : std::runtime_error {
    explicit shape_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace frscat
