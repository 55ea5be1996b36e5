// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_ERRORS_HPP
#define PLORA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plora {

/// Dimension or shape violation in a matrix operation.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error("shape: " + msg) {}
};

/// Numeric failure (non-convergence, non-finite values).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error("numeric: " + msg) {}
};

/// Invalid run configuration or schema violation.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error("config: " + msg) {}
};

/// File format or filesystem failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error("io: " + msg) {}
};

} // namespace plora

#endif
