// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

namespace plora {

namespace {

// Work below this many flops (or entries) is not worth a parallel region.
constexpr std::size_t kMatmulGrain = 1u << 16;
constexpr std::size_t kElementGrain = 1u << 14;

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(op) + ": " + a.shape_str() + " vs " + b.shape_str());
    }
}

} // namespace

namespace detail {

double normal_from_uniforms(double u1, double u2) {
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace detail

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: " + a.shape_str() + " * " + b.shape_str());
    }
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    Matrix out(n, m);
    const double* ap = a.data();
    const double* bp = b.data();
    double* op = out.data();
    const bool par = n * k * m >= kMatmulGrain;
#pragma omp parallel for if (par) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        double* row = op + i * m;
        const double* arow = ap + i * k;
        for (std::size_t l = 0; l < k; ++l) {
            const double av = arow[l];
            const double* brow = bp + l * m;
            for (std::size_t j = 0; j < m; ++j) {
                row[j] += av * brow[j];
            }
        }
    }
    return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "add");
    Matrix out(a.rows(), a.cols());
    const std::size_t n = a.size();
#pragma omp parallel for if (n >= kElementGrain) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        out.data()[i] = a.data()[i] + b.data()[i];
    }
    return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "sub");
    Matrix out(a.rows(), a.cols());
    const std::size_t n = a.size();
#pragma omp parallel for if (n >= kElementGrain) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        out.data()[i] = a.data()[i] - b.data()[i];
    }
    return out;
}

Matrix scale(const Matrix& a, double factor) {
    Matrix out(a.rows(), a.cols());
    const std::size_t n = a.size();
#pragma omp parallel for if (n >= kElementGrain) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        out.data()[i] = a.data()[i] * factor;
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    const std::size_t r = a.rows(), c = a.cols();
#pragma omp parallel for if (r * c >= kElementGrain) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(r); ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

double frobenius_norm(const Matrix& a) {
    const std::size_t r = a.rows(), c = a.cols();
    // Per-row partials, combined in row order: the summation tree is fixed
    // by the shape alone, never by the thread count.
    std::vector<double> partial(r, 0.0);
#pragma omp parallel for if (r * c >= kElementGrain) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(r); ++i) {
        const double* row = a.data() + i * c;
        double s = 0.0;
        for (std::size_t j = 0; j < c; ++j) s += row[j] * row[j];
        partial[i] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return std::sqrt(total);
}

Matrix tanh_map(const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    const std::size_t n = a.size();
#pragma omp parallel for if (n >= kElementGrain) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        out.data()[i] = std::tanh(a.data()[i]);
    }
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double std_dev, SeededRng& rng) {
    if (std_dev < 0.0) {
        throw NumericError("gaussian_matrix: negative std " + std::to_string(std_dev));
    }
    Matrix out(rows, cols);
    const std::size_t n = rows * cols;
    const std::uint64_t base = rng.counter();
#pragma omp parallel for if (n >= kElementGrain) schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) {
        const double u1 = rng.uniform_at(base + 2 * static_cast<std::uint64_t>(j));
        const double u2 = rng.uniform_at(base + 2 * static_cast<std::uint64_t>(j) + 1);
        out.data()[j] = std_dev * detail::normal_from_uniforms(u1, u2);
    }
    rng.advance(2 * n);
    return out;
}

void adamw_update(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v, double lr, double beta1,
                  double beta2, double eps, double weight_decay, double bias_corr1, double bias_corr2) {
    require_same_shape(param, grad, "adamw_update");
    require_same_shape(param, m, "adamw_update moments");
    require_same_shape(param, v, "adamw_update moments");
    const std::size_t n = param.size();
#pragma omp parallel for if (n >= kElementGrain) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const double g = grad.data()[i];
        const double mi = beta1 * m.data()[i] + (1.0 - beta1) * g;
        const double vi = beta2 * v.data()[i] + (1.0 - beta2) * g * g;
        m.data()[i] = mi;
        v.data()[i] = vi;
        const double mhat = mi / bias_corr1;
        const double vhat = vi / bias_corr2;
        param.data()[i] -= lr * (mhat / (std::sqrt(vhat) + eps) + weight_decay * param.data()[i]);
    }
}

} // namespace plora
