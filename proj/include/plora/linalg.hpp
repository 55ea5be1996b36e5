// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_LINALG_HPP
#define PLORA_LINALG_HPP

#include "plora/matrix.hpp"
#include "plora/rng.hpp"

namespace plora {

// Dense kernels, OpenMP-parallel over rows (or flat index) with a grain-size
// guard so desk-scale matrices stay on the calling thread. Each output entry
// is accumulated serially by exactly one thread, and reductions combine fixed
// per-row partials, so results are bit-identical for any thread count.

/// Standard product; a.cols must equal b.rows.
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double factor);
Matrix transpose(const Matrix& a);

/// sqrt of the sum of squared entries, accumulated per row then combined
/// in row order.
double frobenius_norm(const Matrix& a);

/// Elementwise tanh.
Matrix tanh_map(const Matrix& a);

/// Max |a - b| over entries; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// i.i.d. normal entries with mean 0 and the given standard deviation.
/// Entry at flat row-major index j is produced by Box-Muller from the two
/// uniforms at counter positions 2j and 2j+1 relative to the rng's counter
/// on entry; the call advances the counter by exactly 2*rows*cols.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, double std_dev, SeededRng& rng);

/// In-place AdamW update for one tensor, elementwise:
///   m <- beta1*m + (1-beta1)*g
///   v <- beta2*v + (1-beta2)*g^2
///   theta <- theta - lr*( (m/bc1) / (sqrt(v/bc2) + eps) + weight_decay*theta )
/// where bc1 = 1-beta1^t, bc2 = 1-beta2^t are the caller-supplied bias
/// corrections for the step count t.
void adamw_update(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v, double lr, double beta1,
                  double beta2, double eps, double weight_decay, double bias_corr1, double bias_corr2);

namespace detail {
/// Box-Muller cosine branch on two uniforms from (0,1].
double normal_from_uniforms(double u1, double u2);
} // namespace detail

} // namespace plora

#endif
