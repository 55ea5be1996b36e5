// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_MATRIX_HPP
#define PLORA_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "plora/errors.hpp"

namespace plora {

/// Dense row-major matrix of 64-bit floats. The universal numeric carrier:
/// backbone weights, adapter factors, activations and gradients all live here.
class Matrix {
  public:
    /// Empty matrix (0x0). Only valid as a placeholder; every operation
    /// rejects it through its shape checks.
    Matrix() = default;

    /// rows x cols, zero-initialized.
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
        check_dims(rows, cols);
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        check_dims(rows, cols);
        if (data_.size() != rows * cols) {
            throw ShapeError("data length " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows) + "x" + std::to_string(cols));
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    const std::vector<double>& values() const { return data_; }

    void fill(double v) {
        for (auto& x : data_) x = v;
    }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    bool is_finite() const {
        for (double x : data_) {
            if (!std::isfinite(x)) return false;
        }
        return true;
    }

    /// Bit-level equality, used by determinism tests.
    bool bit_equal(const Matrix& o) const {
        if (!same_shape(o)) return false;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (data_[i] != o.data_[i] || std::signbit(data_[i]) != std::signbit(o.data_[i])) return false;
        }
        return true;
    }

    std::string shape_str() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  private:
    static void check_dims(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0) {
            throw ShapeError("matrix dimensions must be positive, got " + std::to_string(rows) + "x" +
                             std::to_string(cols));
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace plora

#endif
