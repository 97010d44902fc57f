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
 * Dense statevector and the Clifford gate kernels acting on it.
 *
 * Qubit q is bit q of the amplitude index (little endian).
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "shadowqsd/common.hpp"

namespace shadowqsd::shadow {

/// Largest register handled by the dense backend.
inline constexpr std::size_t kMaxDenseQubits = 10;

enum class GateKind : std::uint8_t { H, S, Sdg, CNOT, X, Z };

struct Gate {
    GateKind kind = GateKind::H;
    std::uint32_t target = 0;
    std::uint32_t control = 0; ///< CNOT only

    friend bool operator==(const Gate &, const Gate &) = default;
};

using Circuit = std::vector<Gate>;

[[nodiscard]] inline Gate inverse(const Gate &g) {
    Gate out = g;
    if (g.kind == GateKind::S) {
        out.kind = GateKind::Sdg;
    } else if (g.kind == GateKind::Sdg) {
        out.kind = GateKind::S;
    }
    return out;
}

class StateVector {
  public:
    StateVector() = default;

    explicit StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
        const auto size = static_cast<std::size_t>(amps_.size());
        if (size < 2 || (size & (size - 1)) != 0) {
            throw DomainError("statevector length must be a power of two >= 2");
        }
        while ((std::size_t{1} << n_qubits_) < size) {
            ++n_qubits_;
        }
    }

    /// Computational basis state |index> on n qubits.
    static StateVector basis_state(std::size_t n_qubits, std::uint64_t index) {
        if (n_qubits == 0 || n_qubits > kMaxDenseQubits) {
            throw DomainError("basis_state: qubit count outside 1.." +
                              std::to_string(kMaxDenseQubits));
        }
        CVector v = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n_qubits));
        if (index >= static_cast<std::uint64_t>(v.size())) {
            throw DomainError("basis_state: index out of range");
        }
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return StateVector(std::move(v));
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    [[nodiscard]] const CVector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] CVector &amplitudes() noexcept { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t k) const { return amps_(static_cast<Eigen::Index>(k)); }
    [[nodiscard]] double norm() const { return amps_.norm(); }
    [[nodiscard]] bool is_normalized(double tol = 1e-10) const {
        return std::abs(amps_.squaredNorm() - 1.0) <= tol;
    }

  private:
    CVector amps_;
    std::size_t n_qubits_ = 0;
};

/// Applies one gate in place (its adjoint when `dagger`).
inline void apply_gate(StateVector &state, const Gate &gate, bool dagger = false) {
    const std::size_t n = state.n_qubits();
    if (gate.target >= n || (gate.kind == GateKind::CNOT && (gate.control >= n || gate.control == gate.target))) {
        throw DomainError("gate qubit index out of range");
    }
    Complex *a = state.amplitudes().data();
    const std::size_t dim = state.dim();
    const std::size_t tbit = std::size_t{1} << gate.target;
    GateKind kind = gate.kind;
    if (dagger) {
        kind = inverse(gate).kind;
    }
    // Visit every index with the target bit clear, paired with its partner.
    auto for_pairs = [&](auto &&body) {
        for (std::size_t base = 0; base < dim; base += 2 * tbit) {
            for (std::size_t i = base; i < base + tbit; ++i) {
                body(i, i | tbit);
            }
        }
    };
    switch (kind) {
    case GateKind::H: {
        constexpr double r = 0.70710678118654752440084436210485;
        for_pairs([&](std::size_t i, std::size_t j) {
            const Complex x = a[i];
            const Complex y = a[j];
            a[i] = r * (x + y);
            a[j] = r * (x - y);
        });
        break;
    }
    case GateKind::S:
        for_pairs([&](std::size_t, std::size_t j) { a[j] = Complex(-a[j].imag(), a[j].real()); });
        break;
    case GateKind::Sdg:
        for_pairs([&](std::size_t, std::size_t j) { a[j] = Complex(a[j].imag(), -a[j].real()); });
        break;
    case GateKind::X:
        for_pairs([&](std::size_t i, std::size_t j) { std::swap(a[i], a[j]); });
        break;
    case GateKind::Z:
        for_pairs([&](std::size_t, std::size_t j) { a[j] = -a[j]; });
        break;
    case GateKind::CNOT: {
        const std::size_t cbit = std::size_t{1} << gate.control;
        for_pairs([&](std::size_t i, std::size_t j) {
            if (i & cbit) {
                std::swap(a[i], a[j]);
            }
        });
        break;
    }
    }
}

/**
 * Applies `circuit` to `state`. With `inverse_flag` the gates run in reverse
 * order, each replaced by its adjoint, so the result is C^dagger |state>.
 */
[[nodiscard]] inline StateVector apply_circuit(const Circuit &circuit, StateVector state,
                                               bool inverse_flag = false) {
    if (inverse_flag) {
        for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
            apply_gate(state, *it, true);
        }
    } else {
        for (const auto &g : circuit) {
            apply_gate(state, g, false);
        }
    }
    return state;
}

/// Dense unitary of a circuit (columns are images of basis states).
[[nodiscard]] inline CMatrix circuit_unitary(const Circuit &circuit, std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    CMatrix u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        u.col(col) = apply_circuit(circuit, StateVector::basis_state(n_qubits, static_cast<std::uint64_t>(col)))
                         .amplitudes();
    }
    return u;
}

} // namespace shadowqsd::shadow
