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
 * Reduced shell-model Hamiltonian in a Slater-determinant basis.
 *
 * The coupled (J,T) interaction is expanded once into proton-neutron resolved
 * m-scheme operator strings a+_{i1} a+_{i2} a_{i3} a_{i4}; every matrix element
 * is then a pure bit manipulation on occupation masks.
 */

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "shadowqsd/common.hpp"
#include "shadowqsd/shell/angular.hpp"
#include "shadowqsd/shell/basis.hpp"
#include "shadowqsd/shell/interaction.hpp"

namespace shadowqsd::shell {

/// Energy added to the largest physical diagonal entry to fill padded states.
inline constexpr double kPadOffsetMeV = 100.0;

/**
 * Uncoupled two-body string `coefficient * a+_{i1} a+_{i2} a_{i3} a_{i4}`.
 * Canonical form has i1 > i2 and i3 < i4.
 */
struct TwoBodyTerm {
    std::array<int, 4> orbitals{};
    double coefficient = 0.0;
};

/// m-scheme form of H: one-body energies per orbital plus two-body strings.
struct MSchemeHamiltonian {
    std::size_t n_orbitals = 0;
    std::vector<double> one_body; ///< epsilon per orbital
    std::vector<TwoBodyTerm> two_body;
};

struct ReducedHamiltonian {
    std::size_t dim_physical = 0;
    std::size_t n_qubits = 0;
    RMatrix matrix; ///< 2^n x 2^n, real symmetric
    Basis basis;
    double pad_energy = 0.0;

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(matrix.rows());
    }
    [[nodiscard]] RMatrix physical_block() const {
        const auto d = static_cast<Eigen::Index>(dim_physical);
        return matrix.topLeftCorner(d, d);
    }
    [[nodiscard]] CMatrix complex_matrix() const { return matrix.cast<Complex>(); }
};

namespace detail {

/// Sign (-1)^(number of occupied orbitals above `orb`).
inline int ordering_sign(std::uint64_t mask, int orb) {
    const std::uint64_t above = orb >= 63 ? 0 : (mask >> (orb + 1));
    return (std::popcount(above) % 2 == 0) ? +1 : -1;
}

} // namespace detail

/**
 * Applies a+_{i1} a+_{i2} a_{i3} a_{i4} to the determinant `mask`. Returns the
 * resulting mask and the fermionic sign, or nothing when the result vanishes.
 */
[[nodiscard]] inline std::optional<std::pair<std::uint64_t, int>>
apply_two_body(const std::array<int, 4> &ops, std::uint64_t mask) {
    int sign = 1;
    // Rightmost operator acts first.
    for (const int orb : {ops[3], ops[2]}) {
        const std::uint64_t bit = std::uint64_t{1} << orb;
        if ((mask & bit) == 0) {
            return std::nullopt;
        }
        sign *= detail::ordering_sign(mask, orb);
        mask &= ~bit;
    }
    for (const int orb : {ops[1], ops[0]}) {
        const std::uint64_t bit = std::uint64_t{1} << orb;
        if ((mask & bit) != 0) {
            return std::nullopt;
        }
        sign *= detail::ordering_sign(mask, orb);
        mask |= bit;
    }
    return std::make_pair(mask, sign);
}

/// Brings a term to canonical order (i1 > i2, i3 < i4); false if it vanishes.
inline bool canonicalize(TwoBodyTerm &term) {
    auto &o = term.orbitals;
    if (o[0] == o[1] || o[2] == o[3]) {
        return false;
    }
    if (o[0] < o[1]) {
        std::swap(o[0], o[1]);
        term.coefficient = -term.coefficient;
    }
    if (o[2] > o[3]) {
        std::swap(o[2], o[3]);
        term.coefficient = -term.coefficient;
    }
    return true;
}

/**
 * @brief Expands the coupled interaction into m-scheme strings.
 *
 * Pair creation operators carry the 1/sqrt(1 + delta_ab) normalization and
 * Clebsch-Gordan coefficients for both spin and isospin. Each record with
 * (a,b) != (c,d) also contributes its Hermitian partner. Strings with
 * |coefficient| below 1e-14 are dropped.
 */
inline MSchemeHamiltonian expand_to_mscheme(const InteractionData &data) {
    MSchemeHamiltonian h;
    h.n_orbitals = data.orbitals.size();
    h.one_body.resize(h.n_orbitals);
    for (const auto &o : data.orbitals) {
        h.one_body[static_cast<std::size_t>(o.index)] = data.single_particle_energy(o.orbit);
    }

    std::vector<std::vector<const Orbital *>> by_orbit(data.orbits.size());
    for (const auto &o : data.orbitals) {
        by_orbit[static_cast<std::size_t>(o.orbit)].push_back(&o);
    }

    std::map<std::array<int, 4>, double> accum;
    auto add_record = [&](int a, int b, int c, int d, int twice_J, int twice_T, double v) {
        const double norm = std::sqrt((a == b ? 2.0 : 1.0) * (c == d ? 2.0 : 1.0));
        const double strength = v / norm;
        for (int twice_Jz = -twice_J; twice_Jz <= twice_J; twice_Jz += 2) {
            for (int twice_Tz = -twice_T; twice_Tz <= twice_T; twice_Tz += 2) {
                // Creation pair amplitudes (alpha from a, beta from b).
                std::vector<std::pair<std::array<int, 2>, double>> create;
                for (const auto *alpha : by_orbit[a]) {
                    for (const auto *beta : by_orbit[b]) {
                        if (alpha->twice_m + beta->twice_m != twice_Jz ||
                            alpha->twice_tz + beta->twice_tz != twice_Tz) {
                            continue;
                        }
                        const double cg =
                            clebsch_gordan(alpha->twice_j, alpha->twice_m, beta->twice_j,
                                           beta->twice_m, twice_J, twice_Jz) *
                            clebsch_gordan(1, alpha->twice_tz, 1, beta->twice_tz, twice_T, twice_Tz);
                        if (cg != 0.0) {
                            create.push_back({{alpha->index, beta->index}, cg});
                        }
                    }
                }
                if (create.empty()) {
                    continue;
                }
                for (const auto *gamma : by_orbit[c]) {
                    for (const auto *delta : by_orbit[d]) {
                        if (gamma->twice_m + delta->twice_m != twice_Jz ||
                            gamma->twice_tz + delta->twice_tz != twice_Tz) {
                            continue;
                        }
                        const double cg =
                            clebsch_gordan(gamma->twice_j, gamma->twice_m, delta->twice_j,
                                           delta->twice_m, twice_J, twice_Jz) *
                            clebsch_gordan(1, gamma->twice_tz, 1, delta->twice_tz, twice_T,
                                           twice_Tz);
                        if (cg == 0.0) {
                            continue;
                        }
                        // (a+_gamma a+_delta)^dagger = a_delta a_gamma
                        for (const auto &[pair, cg_create] : create) {
                            TwoBodyTerm t{{pair[0], pair[1], delta->index, gamma->index},
                                          strength * cg_create * cg};
                            if (canonicalize(t)) {
                                accum[t.orbitals] += t.coefficient;
                            }
                        }
                    }
                }
            }
        }
    };

    for (const auto &r : data.tbme) {
        add_record(r.a, r.b, r.c, r.d, r.twice_J, r.twice_T, r.value);
        if (r.a != r.c || r.b != r.d) {
            add_record(r.c, r.d, r.a, r.b, r.twice_J, r.twice_T, r.value);
        }
    }
    for (const auto &[ops, coeff] : accum) {
        if (std::abs(coeff) > 1e-14) {
            h.two_body.push_back(TwoBodyTerm{ops, coeff});
        }
    }
    return h;
}

/// <bra| H |ket> for one m-scheme Hamiltonian.
[[nodiscard]] inline double matrix_element(const SlaterDeterminant &bra,
                                           const SlaterDeterminant &ket,
                                           const MSchemeHamiltonian &h) {
    if (bra.particles() != ket.particles()) {
        throw DomainError("matrix_element: determinants have different particle numbers");
    }
    double value = 0.0;
    if (bra.mask() == ket.mask()) {
        for (const int orb : ket.occupied()) {
            value += h.one_body.at(static_cast<std::size_t>(orb));
        }
    }
    if (std::popcount(bra.mask() ^ ket.mask()) > 4) {
        return value;
    }
    for (const auto &term : h.two_body) {
        const auto out = apply_two_body(term.orbitals, ket.mask());
        if (out && out->first == bra.mask()) {
            value += term.coefficient * out->second;
        }
    }
    return value;
}

[[nodiscard]] inline double matrix_element(const SlaterDeterminant &bra,
                                           const SlaterDeterminant &ket,
                                           const InteractionData &data) {
    return matrix_element(bra, ket, expand_to_mscheme(data));
}

/**
 * @brief Dense reduced Hamiltonian padded to the next power of two.
 *
 * The upper triangle is accumulated by applying every string to each ket
 * column, then mirrored, so the matrix is symmetric bit for bit. Padded
 * diagonal entries hold (max physical diagonal) + 100 MeV. A one-state basis
 * is embedded in two dimensions so that at least one qubit exists.
 */
inline ReducedHamiltonian build_hamiltonian(const MSchemeHamiltonian &h, const Basis &basis) {
    if (basis.empty()) {
        throw DomainError("build_hamiltonian: empty basis");
    }
    const std::size_t d = basis.size();
    const std::size_t n = qubits_for_dimension(d);
    const std::size_t full = std::size_t{1} << n;
    if (n > 10) {
        throw DomainError("build_hamiltonian: basis dimension exceeds the 1024-state dense cap");
    }
    for (std::size_t k = 1; k < d; ++k) {
        if (basis[k].particles() != basis[0].particles()) {
            throw DomainError("build_hamiltonian: basis mixes particle numbers");
        }
    }

    ReducedHamiltonian out;
    out.dim_physical = d;
    out.n_qubits = n;
    out.basis = basis;
    RMatrix m = RMatrix::Zero(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(full));
    for (std::size_t col = 0; col < d; ++col) {
        const auto &ket = basis[col];
        double diag = 0.0;
        for (const int orb : ket.occupied()) {
            diag += h.one_body.at(static_cast<std::size_t>(orb));
        }
        m(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) += diag;
        for (const auto &term : h.two_body) {
            const auto res = apply_two_body(term.orbitals, ket.mask());
            if (!res) {
                continue;
            }
            const auto row = basis.index_of(res->first);
            if (row && *row <= col) {
                m(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) +=
                    term.coefficient * res->second;
            }
        }
    }
    for (Eigen::Index col = 0; col < static_cast<Eigen::Index>(d); ++col) {
        for (Eigen::Index row = 0; row < col; ++row) {
            m(col, row) = m(row, col);
        }
    }
    const double max_diag = m.diagonal().head(static_cast<Eigen::Index>(d)).maxCoeff();
    out.pad_energy = max_diag + kPadOffsetMeV;
    for (auto k = static_cast<Eigen::Index>(d); k < static_cast<Eigen::Index>(full); ++k) {
        m(k, k) = out.pad_energy;
    }
    if (!m.allFinite()) {
        throw NumericError("build_hamiltonian: non-finite matrix entries");
    }
    out.matrix = std::move(m);
    return out;
}

inline ReducedHamiltonian build_hamiltonian(const InteractionData &data, const Basis &basis) {
    return build_hamiltonian(expand_to_mscheme(data), basis);
}

/// Pads an explicit symmetric physical block the same way build_hamiltonian does.
/// Used by built-in toy models that have no determinant basis.
inline ReducedHamiltonian reduced_from_matrix(const RMatrix &physical) {
    const auto d = static_cast<std::size_t>(physical.rows());
    if (d == 0 || physical.cols() != physical.rows()) {
        throw DomainError("reduced_from_matrix: need a non-empty square matrix");
    }
    if (!physical.allFinite()) {
        throw NumericError("reduced_from_matrix: non-finite matrix entries");
    }
    if ((physical - physical.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + physical.cwiseAbs().maxCoeff())) {
        throw ValidationError("reduced_from_matrix: matrix is not symmetric");
    }
    const std::size_t n = qubits_for_dimension(d);
    if (n > 10) {
        throw DomainError("reduced_from_matrix: dimension exceeds the 1024-state dense cap");
    }
    const auto full = static_cast<Eigen::Index>(std::size_t{1} << n);
    ReducedHamiltonian out;
    out.dim_physical = d;
    out.n_qubits = n;
    RMatrix m = RMatrix::Zero(full, full);
    m.topLeftCorner(physical.rows(), physical.rows()) = physical;
    out.pad_energy = physical.diagonal().maxCoeff() + kPadOffsetMeV;
    for (auto k = physical.rows(); k < full; ++k) {
        m(k, k) = out.pad_energy;
    }
    out.matrix = std::move(m);
    return out;
}

/// Diagonal 2Jz operator on the padded space (zero on padded states).
[[nodiscard]] inline RMatrix total_twice_jz_matrix(const InteractionData &data,
                                                   const ReducedHamiltonian &h) {
    RMatrix jz = RMatrix::Zero(h.matrix.rows(), h.matrix.cols());
    for (std::size_t k = 0; k < h.basis.size(); ++k) {
        jz(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
            total_twice_m(h.basis[k], data);
    }
    return jz;
}

struct TermSparsity {
    TwoBodyTerm term;
    std::size_t max_column_nonzeros = 0;
    bool pass = true;
};

struct SparsityReport {
    std::vector<TermSparsity> terms;
    bool all_pass = true;
    /// Largest column population of the full H; not expected to be <= 1.
    std::size_t full_max_column_nonzeros = 0;
};

namespace detail {

using FockVector = std::map<std::uint64_t, double>;

inline FockVector apply_ladder(const FockVector &in, int orb, bool create) {
    FockVector out;
    const std::uint64_t bit = std::uint64_t{1} << orb;
    for (const auto &[mask, amp] : in) {
        const bool occupied = (mask & bit) != 0;
        if (occupied == create) {
            continue;
        }
        const int sign = ordering_sign(mask, orb);
        out[create ? (mask | bit) : (mask & ~bit)] += sign * amp;
    }
    return out;
}

} // namespace detail

/**
 * @brief Checks that each uncoupled string has at most one non-zero per column.
 *
 * Each string is applied to each basis column as a general superposition
 * (ladder operator by ladder operator) and the surviving basis components
 * are counted.
 */
inline SparsityReport verify_term_sparsity(const MSchemeHamiltonian &h, const Basis &basis,
                                           double zero_tol = 1e-14) {
    SparsityReport report;
    for (const auto &term : h.two_body) {
        TermSparsity check{term, 0, true};
        for (const auto &ket : basis) {
            detail::FockVector v{{ket.mask(), 1.0}};
            v = detail::apply_ladder(v, term.orbitals[3], false);
            v = detail::apply_ladder(v, term.orbitals[2], false);
            v = detail::apply_ladder(v, term.orbitals[1], true);
            v = detail::apply_ladder(v, term.orbitals[0], true);
            std::size_t nonzeros = 0;
            for (const auto &[mask, amp] : v) {
                if (std::abs(amp) > zero_tol && basis.index_of(mask)) {
                    ++nonzeros;
                }
            }
            check.max_column_nonzeros = std::max(check.max_column_nonzeros, nonzeros);
        }
        check.pass = check.max_column_nonzeros <= 1;
        report.all_pass = report.all_pass && check.pass;
        report.terms.push_back(check);
    }
    const auto full = build_hamiltonian(h, basis);
    const auto d = static_cast<Eigen::Index>(full.dim_physical);
    for (Eigen::Index col = 0; col < d; ++col) {
        std::size_t nz = 0;
        for (Eigen::Index row = 0; row < d; ++row) {
            nz += std::abs(full.matrix(row, col)) > zero_tol ? 1 : 0;
        }
        report.full_max_column_nonzeros = std::max(report.full_max_column_nonzeros, nz);
    }
    return report;
}

inline SparsityReport verify_term_sparsity(const InteractionData &data, const Basis &basis) {
    return verify_term_sparsity(expand_to_mscheme(data), basis);
}

} // namespace shadowqsd::shell
