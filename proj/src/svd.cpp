// Copyright (c) 2026 plora authors
// SPDX-License-Identifier: Apache-2.0

#include "plora/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "plora/errors.hpp"

namespace plora {

namespace {

// One-sided Jacobi on a tall-or-square matrix (rows >= cols): rotate column
// pairs of A until all pairs are orthogonal, accumulating the rotations in V.
// Column norms become the singular values, normalized columns become U.
SvdResult jacobi_tall(const Matrix& input) {
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    Matrix a = input;
    Matrix v = Matrix::identity(n);

    double worst_off = 0.0;
    bool converged = false;
    for (int sweep = 0; sweep < kSvdMaxSweeps && !converged; ++sweep) {
        converged = true;
        worst_off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double x = a(i, p), y = a(i, q);
                    app += x * x;
                    aqq += y * y;
                    apq += x * y;
                }
                const double denom = std::sqrt(app * aqq);
                if (denom == 0.0) continue;
                const double off = std::abs(apq) / denom;
                worst_off = std::max(worst_off, off);
                if (off <= kSvdOffDiagTol) continue;
                converged = false;

                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                for (std::size_t i = 0; i < m; ++i) {
                    const double x = a(i, p), y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = v(i, p), y = v(i, q);
                    v(i, p) = c * x - s * y;
                    v(i, q) = s * x + c * y;
                }
            }
        }
    }
    if (!converged) {
        throw NumericError("svd did not converge in " + std::to_string(kSvdMaxSweeps) +
                           " sweeps, worst off-diagonal residual " + std::to_string(worst_off));
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += a(i, j) * a(i, j);
        sigma[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out;
    out.u = Matrix(m, n);
    out.v = Matrix(n, n);
    out.s.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.s[j] = sigma[src];
        if (sigma[src] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) out.u(i, j) = a(i, src) / sigma[src];
        }
        for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    }
    return out;
}

} // namespace

SvdResult svd(const Matrix& m) {
    if (m.empty()) throw ShapeError("svd: empty matrix");
    if (!m.is_finite()) throw NumericError("svd: input has non-finite entries");

    if (m.rows() >= m.cols()) {
        return jacobi_tall(m);
    }
    // Wide case: factor the transpose and swap the singular vector roles.
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    }
    SvdResult r = jacobi_tall(t);
    return SvdResult{std::move(r.v), std::move(r.s), std::move(r.u)};
}

int numerical_rank(const Matrix& m, double rel_tol) {
    if (rel_tol <= 0.0 || rel_tol >= 1.0) {
        throw NumericError("numerical_rank: rel_tol must lie in (0,1), got " + std::to_string(rel_tol));
    }
    const SvdResult r = svd(m);
    if (r.s.empty() || r.s.front() == 0.0) return 0;
    const double cutoff = rel_tol * r.s.front();
    int rank = 0;
    for (double s : r.s) {
        if (s > cutoff) ++rank;
    }
    return rank;
}

} // namespace plora
