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
 * Stabilizer tableaux, uniform sampling of the n-qubit Clifford group, and
 * synthesis of a gate circuit from a tableau.
 *
 * Row i of a tableau holds the Pauli C X_i C^dagger and row n+i holds
 * C Z_i C^dagger. On each qubit the bit pair (x, z) encodes I, X, Z or Y for
 * (0,0), (1,0), (0,1), (1,1); the sign bit multiplies the Hermitian product.
 */

#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "shadowqsd/common.hpp"
#include "shadowqsd/random.hpp"
#include "shadowqsd/shadow/statevector.hpp"

namespace shadowqsd::shadow {

inline constexpr std::size_t kMaxTableauQubits = 64;

struct PauliRow {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    bool sign = false;

    friend bool operator==(const PauliRow &, const PauliRow &) = default;
};

/// Parity of a 64-bit word without relying on a hardware popcount.
[[nodiscard]] constexpr int parity64(std::uint64_t v) noexcept {
    v ^= v >> 32U;
    v ^= v >> 16U;
    v ^= v >> 8U;
    v ^= v >> 4U;
    v ^= v >> 2U;
    v ^= v >> 1U;
    return static_cast<int>(v & 1U);
}

/// Symplectic inner product mod 2 (1 when the two Paulis anticommute).
[[nodiscard]] constexpr int symplectic_product(const PauliRow &p, const PauliRow &q) noexcept {
    return parity64((p.x & q.z) ^ (p.z & q.x));
}

class Tableau {
  public:
    Tableau() = default;

    static Tableau identity(std::size_t n_qubits) {
        if (n_qubits == 0 || n_qubits > kMaxTableauQubits) {
            throw DomainError("tableau qubit count outside 1..64");
        }
        Tableau t;
        t.n_ = n_qubits;
        t.rows_.resize(2 * n_qubits);
        for (std::size_t i = 0; i < n_qubits; ++i) {
            t.rows_[i].x = std::uint64_t{1} << i;
            t.rows_[n_qubits + i].z = std::uint64_t{1} << i;
        }
        return t;
    }

    /// Tableau of the unitary implemented by `circuit`.
    static Tableau from_circuit(const Circuit &circuit, std::size_t n_qubits) {
        Tableau t = identity(n_qubits);
        for (const auto &g : circuit) {
            t.apply(g);
        }
        return t;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] const PauliRow &destabilizer(std::size_t i) const { return rows_.at(i); }
    [[nodiscard]] const PauliRow &stabilizer(std::size_t i) const { return rows_.at(n_ + i); }
    [[nodiscard]] const std::vector<PauliRow> &rows() const noexcept { return rows_; }
    [[nodiscard]] std::vector<PauliRow> &rows() noexcept { return rows_; }

    /// Left-multiplies the represented unitary by `g`: every row P becomes g P g^dagger.
    void apply(const Gate &g) {
        if (g.target >= n_ || (g.kind == GateKind::CNOT && (g.control >= n_ || g.control == g.target))) {
            throw DomainError("gate qubit index out of range");
        }
        const unsigned t = g.target;
        for (auto &row : rows_) {
            const bool xt = (row.x >> t) & 1U;
            const bool zt = (row.z >> t) & 1U;
            switch (g.kind) {
            case GateKind::H:
                row.sign ^= xt && zt;
                row.x = (row.x & ~(std::uint64_t{1} << t)) | (std::uint64_t{zt} << t);
                row.z = (row.z & ~(std::uint64_t{1} << t)) | (std::uint64_t{xt} << t);
                break;
            case GateKind::S:
                row.sign ^= xt && zt;
                row.z ^= std::uint64_t{xt} << t;
                break;
            case GateKind::Sdg:
                row.sign ^= xt && !zt;
                row.z ^= std::uint64_t{xt} << t;
                break;
            case GateKind::X:
                row.sign ^= zt;
                break;
            case GateKind::Z:
                row.sign ^= xt;
                break;
            case GateKind::CNOT: {
                const unsigned c = g.control;
                const bool xc = (row.x >> c) & 1U;
                const bool zc = (row.z >> c) & 1U;
                row.sign ^= xc && zt && (xt == zc);
                row.x ^= std::uint64_t{xc} << t;
                row.z ^= std::uint64_t{zt} << c;
                break;
            }
            }
        }
    }

    /// Rows satisfy the canonical commutation relations of X_i, Z_i.
    [[nodiscard]] bool is_symplectic() const {
        if (rows_.size() != 2 * n_) {
            return false;
        }
        const std::uint64_t live = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
        for (const auto &r : rows_) {
            if ((r.x | r.z) & ~live) {
                return false;
            }
        }
        for (std::size_t a = 0; a < 2 * n_; ++a) {
            for (std::size_t b = a + 1; b < 2 * n_; ++b) {
                const int want = (b == a + n_ && a < n_) ? 1 : 0;
                if (symplectic_product(rows_[a], rows_[b]) != want) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const Tableau &, const Tableau &) = default;

  private:
    std::size_t n_ = 0;
    std::vector<PauliRow> rows_;
};

/**
 * @brief Uniformly random Clifford tableau.
 *
 * Symplectic pairs are drawn one qubit at a time: a uniform nonzero vector x
 * from the current symplectic complement, a uniform partner z with
 * <x, z> = 1, then the complement is projected away from span{x, z}. Every
 * symplectic basis is reached with equal probability, and 2n independent sign
 * bits complete a uniform draw from the Clifford group modulo global phase.
 */
[[nodiscard]] inline Tableau sample_clifford(std::size_t n_qubits, RandomStream &rng) {
    Tableau t = Tableau::identity(n_qubits);
    const std::size_t n = n_qubits;
    std::vector<PauliRow> span = t.rows();
    // Random bits are consumed 64 at a time from the stream, lowest first.
    std::uint64_t word = 0;
    int left = 0;
    auto bit = [&]() {
        if (left == 0) {
            word = rng.next();
            left = 64;
        }
        const bool b = (word & 1U) != 0;
        word >>= 1U;
        --left;
        return b;
    };
    auto draw = [&]() {
        PauliRow v;
        for (const auto &w : span) {
            if (bit()) {
                v.x ^= w.x;
                v.z ^= w.z;
            }
        }
        return v;
    };
    auto &rows = t.rows();
    for (std::size_t i = 0; i < n; ++i) {
        PauliRow x = draw();
        while (x.x == 0 && x.z == 0) {
            x = draw();
        }
        PauliRow z = draw();
        while (symplectic_product(x, z) != 1) {
            z = draw();
        }
        rows[i] = x;
        rows[n + i] = z;
        for (auto &w : span) {
            const bool wz = symplectic_product(w, z) != 0;
            const bool wx = symplectic_product(w, x) != 0;
            if (wz) {
                w.x ^= x.x;
                w.z ^= x.z;
            }
            if (wx) {
                w.x ^= z.x;
                w.z ^= z.z;
            }
        }
    }
    for (auto &r : rows) {
        r.sign = bit();
    }
    return t;
}

namespace detail {

/// Working copy for synthesis stored column-major: bit r of x[q] is the X
/// component of row r on qubit q, so one gate updates all rows at once.
/// Requires 2n <= 64.
class ColumnTableau {
  public:
    explicit ColumnTableau(const Tableau &t) : n_(t.n_qubits()) {
        for (std::size_t r = 0; r < 2 * n_; ++r) {
            const auto &row = t.rows()[r];
            for (std::size_t q = 0; q < n_; ++q) {
                x_[q] |= ((row.x >> q) & 1U) << r;
                z_[q] |= ((row.z >> q) & 1U) << r;
            }
            sign_ |= std::uint64_t{row.sign} << r;
        }
    }

    void apply(const Gate &g) {
        const std::size_t a = g.target;
        switch (g.kind) {
        case GateKind::H:
            sign_ ^= x_[a] & z_[a];
            std::swap(x_[a], z_[a]);
            break;
        case GateKind::S:
            sign_ ^= x_[a] & z_[a];
            z_[a] ^= x_[a];
            break;
        case GateKind::Sdg:
            sign_ ^= x_[a] & ~z_[a];
            z_[a] ^= x_[a];
            break;
        case GateKind::X:
            sign_ ^= z_[a];
            break;
        case GateKind::Z:
            sign_ ^= x_[a];
            break;
        case GateKind::CNOT: {
            const std::size_t c = g.control;
            sign_ ^= x_[c] & z_[a] & ~(x_[a] ^ z_[c]);
            x_[a] ^= x_[c];
            z_[c] ^= z_[a];
            break;
        }
        }
    }

    [[nodiscard]] bool x(std::size_t row, std::size_t q) const { return (x_[q] >> row) & 1U; }
    [[nodiscard]] bool z(std::size_t row, std::size_t q) const { return (z_[q] >> row) & 1U; }
    [[nodiscard]] bool sign(std::size_t row) const { return (sign_ >> row) & 1U; }

  private:
    std::size_t n_;
    std::array<std::uint64_t, 32> x_{};
    std::array<std::uint64_t, 32> z_{};
    std::uint64_t sign_ = 0;
};

/// Row-major working copy for registers too wide for ColumnTableau.
class RowTableau {
  public:
    explicit RowTableau(const Tableau &t) : t_(t) {}
    void apply(const Gate &g) { t_.apply(g); }
    [[nodiscard]] bool x(std::size_t row, std::size_t q) const { return (t_.rows()[row].x >> q) & 1U; }
    [[nodiscard]] bool z(std::size_t row, std::size_t q) const { return (t_.rows()[row].z >> q) & 1U; }
    [[nodiscard]] bool sign(std::size_t row) const { return t_.rows()[row].sign; }

  private:
    Tableau t_;
};

template <typename Work>
[[nodiscard]] Circuit reduce_to_identity(Work w, std::size_t n) {
    Circuit reduction;
    reduction.reserve(4 * n * n + 4 * n);
    auto gate = [&](GateKind k, std::size_t target, std::size_t control = 0) {
        const Gate g{k, static_cast<std::uint32_t>(target), static_cast<std::uint32_t>(control)};
        w.apply(g);
        reduction.push_back(g);
    };
    for (std::size_t i = 0; i < n; ++i) {
        // Destabilizer row i -> X_i.
        if (!w.x(i, i)) {
            std::size_t j = i;
            while (j < n && !w.x(i, j)) {
                ++j;
            }
            if (j == n) {
                j = i;
                while (!w.z(i, j)) {
                    ++j;
                }
                gate(GateKind::H, j);
            }
            if (j != i) {
                gate(GateKind::CNOT, i, j);
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w.x(i, j)) {
                gate(GateKind::CNOT, j, i);
            }
        }
        if (w.z(i, i)) {
            gate(GateKind::Sdg, i);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w.z(i, j)) {
                gate(GateKind::H, j);
                gate(GateKind::CNOT, j, i);
                gate(GateKind::H, j);
            }
        }
        // Stabilizer row n+i -> X_i after the swap, then swap back.
        gate(GateKind::H, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w.x(n + i, j)) {
                gate(GateKind::CNOT, j, i);
            }
        }
        if (w.z(n + i, i)) {
            gate(GateKind::Sdg, i);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (w.z(n + i, j)) {
                gate(GateKind::H, j);
                gate(GateKind::CNOT, j, i);
                gate(GateKind::H, j);
            }
        }
        gate(GateKind::H, i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (w.sign(i)) {
            gate(GateKind::Z, i);
        }
        if (w.sign(n + i)) {
            gate(GateKind::X, i);
        }
    }
    for (std::size_t r = 0; r < 2 * n; ++r) {
        for (std::size_t q = 0; q < n; ++q) {
            const bool want_x = r < n && q == r;
            const bool want_z = r >= n && q == r - n;
            if (w.x(r, q) != want_x || w.z(r, q) != want_z || w.sign(r)) {
                throw NumericError("tableau reduction did not reach the identity");
            }
        }
    }
    // Reverse and invert: the reduction R satisfies R C = I, so C = R^dagger.
    Circuit circuit;
    circuit.reserve(reduction.size());
    for (auto it = reduction.rbegin(); it != reduction.rend(); ++it) {
        circuit.push_back(inverse(*it));
    }
    return circuit;
}

/// Synthesis without the O(n^2) symplectic precheck, for tableaux known valid.
[[nodiscard]] inline Circuit synthesize_unchecked(const Tableau &tableau) {
    const std::size_t n = tableau.n_qubits();
    if (2 * n <= 64) {
        return reduce_to_identity(ColumnTableau(tableau), n);
    }
    return reduce_to_identity(RowTableau(tableau), n);
}

} // namespace detail

/**
 * @brief Gate sequence over {H, S, CNOT, X, Z} implementing `tableau`.
 *
 * Gaussian elimination reduces a working copy to the identity one qubit at a
 * time; the circuit is the recorded reduction run backwards with each gate
 * inverted. The result is exact up to a global phase.
 */
[[nodiscard]] inline Circuit synthesize_circuit(const Tableau &tableau) {
    if (!tableau.is_symplectic()) {
        throw ContractError("cannot synthesize a circuit from a non-symplectic tableau");
    }
    return detail::synthesize_unchecked(tableau);
}

/// A sampled Clifford together with its circuit.
struct CliffordSample {
    Tableau tableau;
    Circuit circuit;
};

[[nodiscard]] inline CliffordSample sample_clifford_circuit(std::size_t n_qubits, RandomStream &rng) {
    CliffordSample s{sample_clifford(n_qubits, rng), {}};
    s.circuit = detail::synthesize_unchecked(s.tableau);
    return s;
}

} // namespace shadowqsd::shadow
