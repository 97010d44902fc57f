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

#include <map>
#include <tuple>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "../oracles/pauli_oracle.hpp"
#include "shadowqsd/shadow/clifford.hpp"

using namespace shadowqsd;
using namespace shadowqsd::shadow;

namespace {

CMatrix random_state_matrix(int n, std::uint64_t seed) {
    RandomStream rng({seed, 1, 2, 3});
    CVector v(1 << n);
    for (auto &a : v) {
        a = Complex(rng.normal(), rng.normal());
    }
    return v.normalized();
}

double chi_square_p_value(const std::vector<double> &counts, double expected) {
    double stat = 0.0;
    for (const double c : counts) {
        stat += (c - expected) * (c - expected) / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

std::vector<std::uint64_t> encode(const Tableau &t) {
    std::vector<std::uint64_t> key;
    for (const auto &r : t.rows()) {
        key.push_back(r.x | (r.z << 8) | (std::uint64_t{r.sign} << 16));
    }
    return key;
}

} // namespace

TEST(StateVectorTest, GateKernelsMatchDenseMatrices) {
    const int n = 3;
    const CVector psi = random_state_matrix(n, 7);
    for (const char op : {'H', 'S', 'X', 'Z'}) {
        const GateKind kind = op == 'H'   ? GateKind::H
                              : op == 'S' ? GateKind::S
                              : op == 'X' ? GateKind::X
                                          : GateKind::Z;
        for (int q = 0; q < n; ++q) {
            StateVector s(psi);
            apply_gate(s, Gate{kind, static_cast<std::uint32_t>(q), 0});
            const CVector want = oracle::on_qubit(op, q, n) * psi;
            EXPECT_LT((s.amplitudes() - want).norm(), 1e-14) << op << q;
        }
    }
    for (int c = 0; c < n; ++c) {
        for (int t = 0; t < n; ++t) {
            if (c == t) {
                continue;
            }
            StateVector s(psi);
            apply_gate(s, Gate{GateKind::CNOT, static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(c)});
            EXPECT_LT((s.amplitudes() - oracle::cnot(c, t, n) * psi).norm(), 1e-14);
        }
    }
}

TEST(StateVectorTest, InverseCircuitUndoesCircuit) {
    const Circuit c{{GateKind::H, 0, 0}, {GateKind::S, 1, 0}, {GateKind::CNOT, 1, 0},
                    {GateKind::S, 0, 0}, {GateKind::X, 1, 0}, {GateKind::H, 1, 0}};
    const StateVector psi(random_state_matrix(2, 3));
    const auto back = apply_circuit(c, apply_circuit(c, psi), true);
    EXPECT_LT((back.amplitudes() - psi.amplitudes()).norm(), 1e-14);
}

TEST(StateVectorTest, RejectsBadShapesAndQubits) {
    EXPECT_THROW(StateVector(CVector::Ones(3)), DomainError);
    EXPECT_THROW(StateVector(CVector::Ones(1)), DomainError);
    StateVector s = StateVector::basis_state(2, 0);
    EXPECT_THROW(apply_gate(s, Gate{GateKind::H, 2, 0}), DomainError);
    EXPECT_THROW(apply_gate(s, Gate{GateKind::CNOT, 0, 0}), DomainError);
    EXPECT_THROW((void)StateVector::basis_state(2, 4), DomainError);
}

TEST(TableauTest, GateUpdatesMatchConjugation) {
    // Each gate's tableau rule agrees with U P U^dagger on dense matrices.
    const int n = 2;
    const std::vector<std::pair<Gate, oracle::CMat>> gates = {
        {{GateKind::H, 0, 0}, oracle::on_qubit('H', 0, n)},
        {{GateKind::S, 1, 0}, oracle::on_qubit('S', 1, n)},
        {{GateKind::Sdg, 0, 0}, oracle::on_qubit('S', 0, n).adjoint()},
        {{GateKind::X, 1, 0}, oracle::on_qubit('X', 1, n)},
        {{GateKind::Z, 0, 0}, oracle::on_qubit('Z', 0, n)},
        {{GateKind::CNOT, 1, 0}, oracle::cnot(0, 1, n)},
        {{GateKind::CNOT, 0, 1}, oracle::cnot(1, 0, n)},
    };
    // Start from every Pauli string with both signs.
    for (const auto &[g, u] : gates) {
        for (std::uint64_t x = 0; x < 4; ++x) {
            for (std::uint64_t z = 0; z < 4; ++z) {
                Tableau t = Tableau::identity(n);
                t.rows()[0] = PauliRow{x, z, (x + z) % 2 == 1};
                t.apply(g);
                const auto &r = t.rows()[0];
                const oracle::CMat want = u * oracle::pauli(x, z, (x + z) % 2 == 1, n) * u.adjoint();
                EXPECT_LT((oracle::pauli(r.x, r.z, r.sign, n) - want).norm(), 1e-12);
            }
        }
    }
}

TEST(TableauTest, SampledTableauxAreSymplectic) {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::uint64_t s = 0; s < 50; ++s) {
            RandomStream rng({s, n, 0, 0});
            EXPECT_TRUE(sample_clifford(n, rng).is_symplectic());
        }
    }
    Tableau bad = Tableau::identity(2);
    bad.rows()[0] = bad.rows()[2];
    EXPECT_FALSE(bad.is_symplectic());
    EXPECT_THROW((void)synthesize_circuit(bad), ContractError);
}

TEST(TableauTest, SynthesizedCircuitReproducesTableau) {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::uint64_t s = 0; s < 40; ++s) {
            RandomStream rng({s, n, 1, 0});
            const auto t = sample_clifford(n, rng);
            const auto c = synthesize_circuit(t);
            for (const auto &g : c) {
                EXPECT_NE(g.kind, GateKind::Sdg);
            }
            EXPECT_EQ(Tableau::from_circuit(c, n), t);
        }
    }
}

TEST(TableauTest, CircuitUnitaryConjugatesGeneratorsToRows) {
    for (int n = 1; n <= 3; ++n) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            RandomStream rng({s, static_cast<std::uint64_t>(n), 2, 0});
            const auto sample = sample_clifford_circuit(static_cast<std::size_t>(n), rng);
            const CMatrix u = circuit_unitary(sample.circuit, static_cast<std::size_t>(n));
            EXPECT_LT((u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm(), 1e-12);
            for (int q = 0; q < n; ++q) {
                const auto &dx = sample.tableau.destabilizer(static_cast<std::size_t>(q));
                const auto &sz = sample.tableau.stabilizer(static_cast<std::size_t>(q));
                EXPECT_LT((u * oracle::on_qubit('X', q, n) * u.adjoint() -
                           oracle::pauli(dx.x, dx.z, dx.sign, n))
                              .norm(),
                          1e-12);
                EXPECT_LT((u * oracle::on_qubit('Z', q, n) * u.adjoint() -
                           oracle::pauli(sz.x, sz.z, sz.sign, n))
                              .norm(),
                          1e-12);
            }
        }
    }
}

TEST(CliffordSamplingTest, SingleQubitGroupIsUniform) {
    // |C_1 / phase| = 24.
    std::map<std::vector<std::uint64_t>, double> counts;
    const int draws = 48000;
    for (int k = 0; k < draws; ++k) {
        RandomStream rng({11, static_cast<std::uint64_t>(k), 0, 0});
        counts[encode(sample_clifford(1, rng))] += 1;
    }
    ASSERT_EQ(counts.size(), 24U);
    std::vector<double> v;
    for (const auto &[key, c] : counts) {
        v.push_back(c);
    }
    EXPECT_GT(chi_square_p_value(v, draws / 24.0), 1e-3);
}

TEST(CliffordSamplingTest, TwoQubitGroupIsUniform) {
    // |Sp(4,2)| * 4^2 = 720 * 16 = 11520 elements.
    std::map<std::vector<std::uint64_t>, double> counts;
    const int draws = 11520 * 20;
    for (int k = 0; k < draws; ++k) {
        RandomStream rng({12, static_cast<std::uint64_t>(k), 0, 0});
        counts[encode(sample_clifford(2, rng))] += 1;
    }
    ASSERT_EQ(counts.size(), 11520U);
    std::vector<double> v;
    for (const auto &[key, c] : counts) {
        v.push_back(c);
    }
    EXPECT_GT(chi_square_p_value(v, 20.0), 1e-3);
}

TEST(CliffordSamplingTest, ImageOfZeroStateFormsOneDesign) {
    const int n = 2;
    const int draws = 40000;
    const auto d = 1 << n;
    CMatrix mean = CMatrix::Zero(d, d);
    RMatrix sq = RMatrix::Zero(d, d);
    for (int k = 0; k < draws; ++k) {
        RandomStream rng({13, static_cast<std::uint64_t>(k), 0, 0});
        const auto s = sample_clifford_circuit(n, rng);
        const CVector v = apply_circuit(s.circuit, StateVector::basis_state(n, 0)).amplitudes();
        const CMatrix p = v * v.adjoint();
        mean += p;
        sq += p.cwiseAbs2();
    }
    mean /= draws;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double target = i == j ? 1.0 / d : 0.0;
            const double var = sq(i, j) / draws - std::norm(mean(i, j));
            const double se = std::sqrt(std::max(var, 1e-12) / draws);
            EXPECT_LT(std::abs(mean(i, j) - target), 5.0 * se) << i << ',' << j;
        }
    }
}

TEST(CliffordSamplingTest, SameStreamSameClifford) {
    RandomStream a({99, 1, 2, 0});
    RandomStream b({99, 1, 2, 0});
    EXPECT_EQ(sample_clifford_circuit(5, a).circuit, sample_clifford_circuit(5, b).circuit);
}
