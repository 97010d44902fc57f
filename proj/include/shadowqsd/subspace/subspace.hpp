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
 * Vectorized shadow subspace: basis elements sigma_(i,j) = rho_i rho_j with
 * the Hilbert-Schmidt inner product <<X|Y>> = Tr(X^dagger Y).
 *
 *   S_(ij),(lm) = Tr(rho_j rho_i rho_l rho_m)
 *   H_(ij),(lm) = Tr(rho_j rho_i H rho_l rho_m)
 *
 * Two assembly routes are provided. The dense one multiplies d x d estimator
 * matrices. The factorized one never forms them: each rho = c Phi Phi^dagger - I
 * is expanded, and traces reduce to chains of snapshot Gram matrices.
 */

#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <utility>
#include <vector>

#include "shadowqsd/common.hpp"
#include "shadowqsd/parallel.hpp"
#include "shadowqsd/shadow/shadow.hpp"
#include "shadowqsd/subspace/gevp.hpp"

namespace shadowqsd::subspace {

struct SubspaceProblem {
    std::size_t m = 0;
    CMatrix h_eff;
    CMatrix s;

    [[nodiscard]] std::size_t dim() const noexcept { return m * m; }
    /// Row-major flat index of sigma_(i,j).
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * m + j; }
    [[nodiscard]] std::pair<std::size_t, std::size_t> pair(std::size_t k) const noexcept {
        return {k / m, k % m};
    }
};

namespace detail {

inline void check_inputs(std::size_t m, Eigen::Index d, const CMatrix &h) {
    if (m == 0) {
        throw DomainError("assemble_subspace: need at least one state");
    }
    if (h.rows() != d || h.cols() != d) {
        throw DomainError("assemble_subspace: Hamiltonian dimension " + std::to_string(h.rows()) +
                          " does not match state dimension " + std::to_string(d));
    }
}

} // namespace detail

/// Dense assembly from m density (or shadow-estimate) matrices.
[[nodiscard]] inline SubspaceProblem assemble_subspace(const std::vector<CMatrix> &rhos,
                                                       const CMatrix &h) {
    const std::size_t m = rhos.size();
    detail::check_inputs(m, m ? rhos[0].rows() : 0, h);
    const Eigen::Index d = rhos[0].rows();
    for (const auto &r : rhos) {
        if (r.rows() != d || r.cols() != d) {
            throw DomainError("assemble_subspace: density matrices differ in shape");
        }
    }
    SubspaceProblem p;
    p.m = m;
    const auto n = static_cast<Eigen::Index>(m * m);
    CMatrix v(d * d, n);
    CMatrix w(d * d, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const CMatrix sigma = rhos[i] * rhos[j];
            const auto k = static_cast<Eigen::Index>(p.index(i, j));
            v.col(k) = sigma.reshaped();
            w.col(k) = (h * sigma).reshaped();
        }
    }
    p.s = hermitize(v.adjoint() * v);
    p.h_eff = hermitize(v.adjoint() * w);
    return p;
}

/// Shadow estimates of each state, materialized, then assembled densely.
[[nodiscard]] inline SubspaceProblem assemble_subspace(const std::vector<shadow::ClassicalShadow> &shadows,
                                                       const CMatrix &h) {
    std::vector<CMatrix> rhos;
    rhos.reserve(shadows.size());
    for (const auto &s : shadows) {
        rhos.push_back(shadow::materialize(s));
    }
    return assemble_subspace(rhos, h);
}

/**
 * @brief Assembly without forming any d x d estimator.
 *
 * With rho_a = c Phi_a Phi_a^dagger - I, c = (d+1)/M, each of the four slots
 * is either the snapshot part or -I. A product of snapshot parts in cyclic
 * order a1..ak has trace c^k Tr(G_{a1 a2} ... G_{ak a1}) with
 * G_ab = Phi_a^dagger Phi_b; the link that crosses H uses
 * K_ab = Phi_a^dagger H Phi_b instead. Cost grows as M^3 per entry.
 */
[[nodiscard]] inline SubspaceProblem assemble_subspace_factorized(
    const std::vector<shadow::ClassicalShadow> &shadows, const CMatrix &h, std::size_t threads = 1) {
    const std::size_t m = shadows.size();
    const Eigen::Index d = m ? static_cast<Eigen::Index>(std::size_t{1} << shadows[0].n_qubits) : 0;
    detail::check_inputs(m, d, h);
    std::vector<CMatrix> phi(m);
    std::vector<double> c(m);
    for (std::size_t a = 0; a < m; ++a) {
        const auto &snaps = shadows[a].snapshots;
        if (snaps.empty() || static_cast<Eigen::Index>(std::size_t{1} << shadows[a].n_qubits) != d) {
            throw DomainError("assemble_subspace_factorized: empty shadow or qubit mismatch");
        }
        phi[a].resize(d, static_cast<Eigen::Index>(snaps.size()));
        for (std::size_t k = 0; k < snaps.size(); ++k) {
            phi[a].col(static_cast<Eigen::Index>(k)) = snaps[k].phi.amplitudes();
        }
        c[a] = static_cast<double>(d + 1) / static_cast<double>(snaps.size());
    }
    std::vector<CMatrix> gram(m * m);
    std::vector<CMatrix> kgram(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        const CMatrix hphi = h * phi[a];
        for (std::size_t b = 0; b < m; ++b) {
            gram[b * m + a] = phi[b].adjoint() * phi[a];
            kgram[b * m + a] = phi[b].adjoint() * hphi;
        }
    }
    const Complex trace_h = h.trace();

    // Slots: 0..3 hold state labels, H sits after slot `h_after` (-1 for none).
    auto ring_trace = [&](const std::array<std::size_t, 4> &labels, int h_after) {
        Complex total = 0.0;
        for (unsigned subset = 0; subset < 16; ++subset) {
            std::vector<std::size_t> chosen;
            std::vector<bool> h_follows;
            bool h_before_first = false;
            for (int slot = 0; slot < 4; ++slot) {
                if (subset & (1U << slot)) {
                    chosen.push_back(labels[static_cast<std::size_t>(slot)]);
                    h_follows.push_back(false);
                }
                if (slot == h_after) {
                    if (chosen.empty()) {
                        h_before_first = true;
                    } else {
                        h_follows.back() = true;
                    }
                }
            }
            const double sign = ((4 - std::popcount(subset)) % 2 == 0) ? 1.0 : -1.0;
            const bool has_h = h_after >= 0;
            if (chosen.empty()) {
                total += sign * (has_h ? trace_h : Complex(static_cast<double>(d), 0.0));
                continue;
            }
            // H before the first chosen factor wraps around to follow the last.
            if (h_before_first) {
                h_follows.back() = true;
            }
            double scale = 1.0;
            CMatrix prod;
            for (std::size_t k = 0; k < chosen.size(); ++k) {
                const std::size_t a = chosen[k];
                const std::size_t b = chosen[(k + 1) % chosen.size()];
                const CMatrix &link = h_follows[k] ? kgram[a * m + b] : gram[a * m + b];
                prod = k == 0 ? link : CMatrix(prod * link);
                scale *= c[a];
            }
            total += sign * scale * prod.trace();
        }
        return total;
    };

    SubspaceProblem p;
    p.m = m;
    const auto n = static_cast<Eigen::Index>(m * m);
    p.s.resize(n, n);
    p.h_eff.resize(n, n);
    parallel_for(m * m, threads, [&](std::size_t row) {
        const auto [i, j] = p.pair(row);
        for (std::size_t col = 0; col < m * m; ++col) {
            const auto [l, mm] = p.pair(col);
            p.s(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = ring_trace({j, i, l, mm}, -1);
            p.h_eff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = ring_trace({j, i, l, mm}, 1);
        }
    });
    p.s = hermitize(p.s);
    p.h_eff = hermitize(p.h_eff);
    return p;
}

/// Standard subspace pair H_ij = <psi_i|H|psi_j>, S_ij = <psi_i|psi_j>.
[[nodiscard]] inline std::pair<CMatrix, CMatrix> standard_subspace(const std::vector<CVector> &states,
                                                                   const CMatrix &h) {
    if (states.empty()) {
        throw DomainError("standard_subspace: need at least one state");
    }
    CMatrix psi(states[0].size(), static_cast<Eigen::Index>(states.size()));
    for (std::size_t k = 0; k < states.size(); ++k) {
        psi.col(static_cast<Eigen::Index>(k)) = states[k];
    }
    return {hermitize(psi.adjoint() * h * psi), hermitize(psi.adjoint() * psi)};
}

} // namespace shadowqsd::subspace
