// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/ref_linalg.hpp"

#include <cmath>
#include <numbers>

namespace plora::ref {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("ref::matmul: " + a.shape_str() + " * " + b.shape_str());
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l) {
                s += a(i, l) * b(l, j);
            }
            out(i, j) = s;
        }
    }
    return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw ShapeError("ref::add: " + a.shape_str() + " vs " + b.shape_str());
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw ShapeError("ref::sub: " + a.shape_str() + " vs " + b.shape_str());
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

Matrix scale(const Matrix& a, double factor) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] * factor;
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    }
    return out;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * a.data()[i];
    return std::sqrt(s);
}

Matrix tanh_map(const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = std::tanh(a.data()[i]);
    return out;
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double std_dev, SeededRng& rng) {
    if (std_dev < 0.0) throw NumericError("ref::gaussian_matrix: negative std");
    Matrix out(rows, cols);
    for (std::size_t j = 0; j < rows * cols; ++j) {
        const double u1 = rng.next_uniform();
        const double u2 = rng.next_uniform();
        out.data()[j] = std_dev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    return out;
}

void adamw_update(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v, double lr, double beta1,
                  double beta2, double eps, double weight_decay, double bias_corr1, double bias_corr2) {
    if (!param.same_shape(grad)) throw ShapeError("ref::adamw_update: shapes");
    for (std::size_t i = 0; i < param.size(); ++i) {
        const double g = grad.data()[i];
        m.data()[i] = beta1 * m.data()[i] + (1.0 - beta1) * g;
        v.data()[i] = beta2 * v.data()[i] + (1.0 - beta2) * g * g;
        const double mhat = m.data()[i] / bias_corr1;
        const double vhat = v.data()[i] / bias_corr2;
        param.data()[i] -= lr * (mhat / (std::sqrt(vhat) + eps) + weight_decay * param.data()[i]);
    }
}

} // namespace plora::ref
