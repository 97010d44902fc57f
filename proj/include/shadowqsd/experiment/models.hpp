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
 * Built-in model Hamiltonians, so the studies run without external data.
 *
 * `toy_he6` is a random 15-state real symmetric matrix padded to 4 qubits.
 * It is block diagonal: a 3-state block holds |0> and the ground state, and a
 * 12-state block carries the rest of the spectrum. The Krylov space of |0>
 * therefore closes after three evolved states (MNES = 3).
 *
 * `toy_pairing` is two neutrons in s1/2 and p3/2 with J = 0 pairing matrix
 * elements only; its Jz = 0 basis has 5 determinants and MNES = 2.
 */

#pragma once

#include <filesystem>
#include <string>

#include <Eigen/QR>

#include "shadowqsd/experiment/config.hpp"
#include "shadowqsd/random.hpp"
#include "shadowqsd/shell/basis.hpp"
#include "shadowqsd/shell/hamiltonian.hpp"
#include "shadowqsd/shell/interaction.hpp"

namespace shadowqsd::experiment {

using shell::ReducedHamiltonian;

inline constexpr const char *kPairingInteraction = R"(# Two-shell neutron pairing model (built in).
SHELL 0s1/2 1 + +1
SHELL 0p3/2 3 - +1
SPE 0s1/2 0.0
SPE 0p3/2 1.5
TBME 0s1/2 0s1/2 0s1/2 0s1/2 0 2 -2.0
TBME 0s1/2 0s1/2 0p3/2 0p3/2 0 2 -1.0
TBME 0p3/2 0p3/2 0p3/2 0p3/2 0 2 -1.5
)";

namespace detail {

/// Haar-ish random orthogonal matrix: Q of a Gaussian matrix, column signs fixed.
inline RMatrix random_orthogonal(Eigen::Index d, RandomStream &rng) {
    RMatrix g(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            g(r, c) = rng.normal();
        }
    }
    const Eigen::HouseholderQR<RMatrix> qr(g);
    RMatrix q = qr.householderQ();
    const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < d; ++c) {
        if (r(c, c) < 0) {
            q.col(c) = -q.col(c);
        }
    }
    return q;
}

} // namespace detail

/// Minimum |<ground|0>|^2 accepted for the He6-like toy.
inline constexpr double kToyMinGroundOverlap = 0.3;

[[nodiscard]] inline ReducedHamiltonian toy_he6(std::uint64_t seed) {
    RandomStream rng({seed, 0x7E6, 0, 0});
    for (;;) {
        RMatrix h = RMatrix::Zero(15, 15);
        const Eigen::Vector3d low(-2.0 + 0.4 * rng.uniform() - 0.2, -0.8 + 0.4 * rng.uniform() - 0.2,
                                  0.9 + 0.4 * rng.uniform() - 0.2);
        const RMatrix qa = detail::random_orthogonal(3, rng);
        h.topLeftCorner(3, 3) = qa * low.asDiagonal() * qa.transpose();
        RVector high(12);
        for (Eigen::Index k = 0; k < 12; ++k) {
            high(k) = 1.5 + 4.5 * rng.uniform();
        }
        const RMatrix qb = detail::random_orthogonal(12, rng);
        h.bottomRightCorner(12, 12) = qb * high.asDiagonal() * qb.transpose();
        h = (0.5 * (h + h.transpose())).eval();
        // Ground state of the small block is the eigenvector of min(low).
        Eigen::Index g = 0;
        low.minCoeff(&g);
        if (qa(0, g) * qa(0, g) >= kToyMinGroundOverlap) {
            return shell::reduced_from_matrix(h);
        }
    }
}

[[nodiscard]] inline ReducedHamiltonian toy_pairing() {
    const auto data = shell::parse_interaction_text(kPairingInteraction);
    return shell::build_hamiltonian(data, shell::enumerate_basis(data, 0, 2, 0));
}

/// Hamiltonian selected by a config; missing files raise ConfigError.
[[nodiscard]] inline ReducedHamiltonian load_model(const ExperimentConfig &cfg) {
    if (cfg.model == "toy_he6") {
        return toy_he6(cfg.toy_seed);
    }
    if (cfg.model == "toy_pairing") {
        return toy_pairing();
    }
    const auto path = cfg.resolve(cfg.interaction);
    if (!std::filesystem::exists(path)) {
        throw ConfigError("interaction file '" + path.string() +
                          "' does not exist; fix the 'interaction' key (relative paths resolve "
                          "against the config file's directory) or use model = toy_he6");
    }
    const auto data = shell::load_interaction(path.string());
    return shell::build_hamiltonian(data,
                                    shell::enumerate_basis(data, cfg.protons, cfg.neutrons, cfg.twice_jz));
}

} // namespace shadowqsd::experiment
