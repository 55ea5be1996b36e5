// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_REF_LINALG_HPP
#define PLORA_REF_LINALG_HPP

#include "plora/matrix.hpp"
#include "plora/rng.hpp"

namespace plora::ref {

// Serial reference kernels: plain loops, single accumulator, no OpenMP.
// Kept as the independent oracle for the parallel kernels; tests and the
// kernel benchmark link against these, production code never does.

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double factor);
Matrix transpose(const Matrix& a);
double frobenius_norm(const Matrix& a);
Matrix tanh_map(const Matrix& a);
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double std_dev, SeededRng& rng);
void adamw_update(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v, double lr, double beta1,
                  double beta2, double eps, double weight_decay, double bias_corr1, double bias_corr2);

} // namespace plora::ref

#endif
