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
 * Exact real-time evolution and exact diagonalization of the reduced Hamiltonian.
 */

#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "shadowqsd/common.hpp"
#include "shadowqsd/shadow/statevector.hpp"
#include "shadowqsd/shell/hamiltonian.hpp"

namespace shadowqsd::subspace {

using shadow::StateVector;
using shell::ReducedHamiltonian;

/// e^{-iHt} from one eigendecomposition of a real symmetric H (hbar = 1).
class SpectralPropagator {
  public:
    explicit SpectralPropagator(const RMatrix &h) {
        if (!h.allFinite()) {
            throw NumericError("propagator: Hamiltonian has non-finite entries");
        }
        Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
        if (es.info() != Eigen::Success) {
            throw NumericError("propagator: eigendecomposition failed");
        }
        values_ = es.eigenvalues();
        vectors_ = es.eigenvectors();
    }

    [[nodiscard]] StateVector evolve(double t, const StateVector &initial) const {
        if (!std::isfinite(t)) {
            throw DomainError("evolve: time must be finite");
        }
        if (static_cast<Eigen::Index>(initial.dim()) != vectors_.rows()) {
            throw DomainError("evolve: state and Hamiltonian dimensions differ");
        }
        if (!initial.is_normalized(1e-10)) {
            throw ContractError("evolve: initial state is not normalized");
        }
        if (t == 0.0) {
            return initial;
        }
        CVector coeffs = vectors_.transpose().cast<Complex>() * initial.amplitudes();
        for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
            coeffs(k) *= std::polar(1.0, -values_(k) * t);
        }
        return StateVector(vectors_.cast<Complex>() * coeffs);
    }

    [[nodiscard]] const RVector &eigenvalues() const noexcept { return values_; }
    [[nodiscard]] const RMatrix &eigenvectors() const noexcept { return vectors_; }

  private:
    RVector values_;
    RMatrix vectors_;
};

[[nodiscard]] inline StateVector evolve_exact(const ReducedHamiltonian &h, double t,
                                              const StateVector &initial) {
    return SpectralPropagator(h.matrix).evolve(t, initial);
}

/// Initial register |0...0>, the first basis determinant.
[[nodiscard]] inline StateVector zero_state(const ReducedHamiltonian &h) {
    return StateVector::basis_state(h.n_qubits, 0);
}

struct GroundState {
    double energy = 0.0;
    RVector vector; ///< physical-block eigenvector
    /// Same vector embedded in the padded register.
    [[nodiscard]] CVector padded(std::size_t full_dim) const {
        CVector v = CVector::Zero(static_cast<Eigen::Index>(full_dim));
        v.head(vector.size()) = vector.cast<Complex>();
        return v;
    }
};

/// Lowest eigenpair of the physical block (padding excluded).
[[nodiscard]] inline GroundState exact_ground_energy(const ReducedHamiltonian &h) {
    const RMatrix block = h.physical_block();
    if (block.size() == 0 || !block.allFinite()) {
        throw NumericError("exact_ground_energy: empty or non-finite physical block");
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(block);
    if (es.info() != Eigen::Success) {
        throw NumericError("exact_ground_energy: eigendecomposition failed");
    }
    return GroundState{es.eigenvalues()(0), es.eigenvectors().col(0)};
}

struct EvolvedFamily {
    std::vector<double> times;
    std::vector<StateVector> states;
};

/// Uniform grid t_j = j dt for j = 1..m.
[[nodiscard]] inline std::vector<double> time_grid(std::size_t m, double dt) {
    if (m == 0) {
        throw DomainError("time grid needs at least one point");
    }
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw DomainError("time step must be positive and finite");
    }
    std::vector<double> t(m);
    for (std::size_t j = 0; j < m; ++j) {
        t[j] = static_cast<double>(j + 1) * dt;
    }
    return t;
}

[[nodiscard]] inline EvolvedFamily evolve_family(const ReducedHamiltonian &h,
                                                 const std::vector<double> &times,
                                                 const StateVector &initial) {
    const SpectralPropagator prop(h.matrix);
    EvolvedFamily fam{times, {}};
    fam.states.reserve(times.size());
    for (const double t : times) {
        fam.states.push_back(prop.evolve(t, initial));
    }
    return fam;
}

} // namespace shadowqsd::subspace
