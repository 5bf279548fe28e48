#pragma once

#include <stdexcept>
#include <string>

namespace ps {

// Input/configuration problems: bad expressions, invalid parameters, malformed
// configs, dimension mismatches.  Mapped to exit/error code 1.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numerical failures: singular solves, non-finite values, contraction
// violations, fit domain errors.  Mapped to exit/error code 2.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures (unwritable paths, missing inputs).  Also exit code 2.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ps
