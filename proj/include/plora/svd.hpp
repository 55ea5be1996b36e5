// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLORA_SVD_HPP
#define PLORA_SVD_HPP

#include <vector>

#include "plora/matrix.hpp"

namespace plora {

/// Thin SVD of a d x k matrix: u is d x p, s has length p = min(d,k) sorted
/// non-increasing, v is k x p, and u * diag(s) * v^T reconstructs the input.
struct SvdResult {
    Matrix u;
    std::vector<double> s;
    Matrix v;
};

inline constexpr double kDefaultRankTol = 1e-8;
inline constexpr int kSvdMaxSweeps = 60;
inline constexpr double kSvdOffDiagTol = 1e-12;

/// One-sided Jacobi SVD. Serial: the rotation sweep is order-dependent and
/// only runs on desk-scale matrices. Throws NumericError with the residual
/// if the sweep cap is hit before column pairs decouple.
SvdResult svd(const Matrix& m);

/// Count of singular values strictly greater than rel_tol * s_max.
/// Zero matrix has rank 0. rel_tol must lie in (0, 1).
int numerical_rank(const Matrix& m, double rel_tol = kDefaultRankTol);

} // namespace plora

#endif
