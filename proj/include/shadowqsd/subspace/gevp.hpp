// Copyright 2026 The shadowqsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Hermitian generalized eigenproblem H c = E S c with positive semidefinite S.
 */

#pragma once

#include <cmath>

#include <Eigen/Eigenvalues>

#include "shadowqsd/common.hpp"

namespace shadowqsd::subspace {

/// Relative eigenvalue cut on S. A machine-rank filter, not a statistical one.
inline constexpr double kDefaultDropTolerance = 1e-12;

struct GevpSolution {
    RVector eigenvalues;      ///< ascending
    Eigen::Index kept_rank = 0;
    double drop_tolerance = kDefaultDropTolerance;
    CMatrix coefficients;     ///< eigenvectors in the whitened basis
    CMatrix whitening;        ///< maps whitened coordinates back to the original basis
    RVector overlap_spectrum; ///< eigenvalues of S, ascending

    [[nodiscard]] double lowest() const { return eigenvalues(0); }
};

/// (A + A^dagger) / 2.
[[nodiscard]] inline CMatrix hermitize(const CMatrix &a) {
    return (a + a.adjoint()) * 0.5;
}

/**
 * @brief Solves H c = E S c by whitening.
 *
 * S is diagonalized, directions with eigenvalue <= drop_tol * lambda_max are
 * discarded, the kept ones are scaled to unit norm, and the projected H is
 * diagonalized as an ordinary Hermitian matrix.
 */
[[nodiscard]] inline GevpSolution solve_gevp(const CMatrix &h, const CMatrix &s,
                                             double drop_tol = kDefaultDropTolerance) {
    if (h.rows() != h.cols() || s.rows() != s.cols() || h.rows() != s.rows() || h.rows() == 0) {
        throw DomainError("solve_gevp: H and S must be square and of equal, nonzero size");
    }
    if (!(drop_tol >= 0.0 && drop_tol < 1.0)) {
        throw DomainError("solve_gevp: drop tolerance must lie in [0, 1)");
    }
    if (!h.allFinite() || !s.allFinite()) {
        throw NumericError("solve_gevp: non-finite matrix entries");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(s));
    if (es.info() != Eigen::Success) {
        throw NumericError("solve_gevp: overlap eigendecomposition failed");
    }
    GevpSolution out;
    out.drop_tolerance = drop_tol;
    out.overlap_spectrum = es.eigenvalues();
    const double lmax = out.overlap_spectrum.maxCoeff();
    if (!(lmax > 0.0)) {
        throw DegenerateSubspaceError("solve_gevp: overlap matrix has no positive eigenvalue");
    }
    const double cut = drop_tol * lmax;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = 0; k < out.overlap_spectrum.size(); ++k) {
        if (out.overlap_spectrum(k) > cut) {
            kept.push_back(k);
        }
    }
    out.kept_rank = static_cast<Eigen::Index>(kept.size());
    if (out.kept_rank == 0) {
        throw DegenerateSubspaceError("solve_gevp: no overlap direction above the rank cut");
    }
    CMatrix u(h.rows(), out.kept_rank);
    for (Eigen::Index c = 0; c < out.kept_rank; ++c) {
        const auto k = kept[static_cast<std::size_t>(c)];
        u.col(c) = es.eigenvectors().col(k) / std::sqrt(out.overlap_spectrum(k));
    }
    const CMatrix reduced = hermitize(u.adjoint() * hermitize(h) * u);
    Eigen::SelfAdjointEigenSolver<CMatrix> rs(reduced);
    if (rs.info() != Eigen::Success || !rs.eigenvalues().allFinite()) {
        throw NumericError("solve_gevp: reduced eigendecomposition failed");
    }
    out.eigenvalues = rs.eigenvalues();
    out.coefficients = rs.eigenvectors();
    out.whitening = std::move(u);
    return out;
}

} // namespace shadowqsd::subspace
