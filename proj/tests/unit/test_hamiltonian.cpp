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

#include <gtest/gtest.h>

#include "../oracles/fock_oracle.hpp"
#include "shadowqsd/shell/hamiltonian.hpp"
#include "test_support.hpp"

using namespace shadowqsd;
using namespace shadowqsd::shell;
using testing_support::fixture;
using testing_support::random_interaction_text;

namespace {

InteractionData he6_like(std::uint64_t seed) {
    return parse_interaction_text(
        random_interaction_text({{"0p3/2", 3, '-', +1}, {"0p1/2", 1, '-', +1}}, seed));
}

double max_abs_diff(const RMatrix &a, const RMatrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST(MatrixElement, OneBodyDiagonal) {
    const auto data = parse_interaction_text("SHELL a 1 + 1\nSHELL b 3 + 1\nSPE a -1.25\nSPE b 0.5\n");
    const auto h = expand_to_mscheme(data);
    // orbitals 0,1 belong to a; 2..5 to b
    const SlaterDeterminant det({3, 0});
    EXPECT_DOUBLE_EQ(matrix_element(det, det, h), -1.25 + 0.5);
}

TEST(MatrixElement, MoreThanTwoMovedOrbitalsVanish) {
    const auto data = he6_like(3);
    const auto h = expand_to_mscheme(data);
    const SlaterDeterminant bra({5, 4, 3});
    const SlaterDeterminant ket({2, 1, 0});
    EXPECT_EQ(matrix_element(bra, ket, h), 0.0);
}

TEST(MatrixElement, UnequalParticleNumberIsDomainError) {
    const auto h = expand_to_mscheme(he6_like(1));
    EXPECT_THROW((void)matrix_element(SlaterDeterminant({1}), SlaterDeterminant({1, 0}), h),
                 DomainError);
}

TEST(MatrixElement, SingleUncoupledTermCarriesReorderingSign) {
    // a+_1 a+_2 a_3 a_4 on orbitals 1..4 (orbital 0 unused), unit strength.
    MSchemeHamiltonian h;
    h.n_orbitals = 5;
    h.one_body.assign(5, 0.0);
    h.two_body.push_back(TwoBodyTerm{{1, 2, 3, 4}, 1.0});
    const SlaterDeterminant bra({2, 1});
    const SlaterDeterminant ket({4, 3});
    EXPECT_DOUBLE_EQ(matrix_element(bra, ket, h), -1.0);

    // Same value after canonical reordering of the string.
    TwoBodyTerm canon{{1, 2, 3, 4}, 1.0};
    ASSERT_TRUE(canonicalize(canon));
    MSchemeHamiltonian hc = h;
    hc.two_body = {canon};
    EXPECT_DOUBLE_EQ(matrix_element(bra, ket, hc), -1.0);

    // Fock oracle agreement.
    const oracle::FockSpace fock(5);
    const Eigen::MatrixXd op =
        fock.create(1) * fock.create(2) * fock.annihilate(3) * fock.annihilate(4);
    const double expected = fock.determinant({2, 1}).dot(op * fock.determinant({4, 3}));
    EXPECT_DOUBLE_EQ(expected, -1.0);
}

TEST(BuildHamiltonian, SingleDeterminantPromotedToOneQubit) {
    const auto data = load_interaction(fixture("single_s_shell.int"));
    const auto basis = enumerate_basis(data, 0, 1, +1);
    ASSERT_EQ(basis.size(), 1U);
    const auto h = build_hamiltonian(data, basis);
    EXPECT_EQ(h.n_qubits, 1U);
    EXPECT_EQ(h.dim(), 2U);
    EXPECT_DOUBLE_EQ(h.matrix(0, 0), -1.0);
    EXPECT_DOUBLE_EQ(h.matrix(1, 1), -1.0 + kPadOffsetMeV);
    EXPECT_DOUBLE_EQ(h.matrix(0, 1), 0.0);
}

TEST(BuildHamiltonian, He6LikeIsPaddedToSixteen) {
    const auto data = he6_like(7);
    const auto basis = enumerate_basis(data, 0, 2);
    const auto h = build_hamiltonian(data, basis);
    EXPECT_EQ(h.dim_physical, 15U);
    EXPECT_EQ(h.n_qubits, 4U);
    ASSERT_EQ(h.dim(), 16U);
    for (Eigen::Index k = 0; k < 15; ++k) {
        EXPECT_EQ(h.matrix(15, k), 0.0);
        EXPECT_EQ(h.matrix(k, 15), 0.0);
    }
    EXPECT_DOUBLE_EQ(h.matrix(15, 15),
                     h.matrix.diagonal().head(15).maxCoeff() + kPadOffsetMeV);
}

TEST(BuildHamiltonian, HermitianBitForBit) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto data = he6_like(seed);
        const auto h = build_hamiltonian(data, enumerate_basis(data, 0, 3));
        EXPECT_TRUE(h.matrix == h.matrix.transpose());
    }
}

// Six determinants (2 neutrons in a j = 3/2 shell), all 36 entries.
TEST(BuildHamiltonian, SixDeterminantToyMatchesFockOracle) {
    const auto data = parse_interaction_text(
        random_interaction_text({{"0d3/2", 3, '+', +1}}, 11));
    const auto basis = enumerate_basis(data, 0, 2);
    ASSERT_EQ(basis.size(), 6U);
    const auto h = build_hamiltonian(data, basis);
    const oracle::FockSpace fock(static_cast<int>(data.orbitals.size()));
    const auto expected = fock.projected_hamiltonian(data, basis);
    EXPECT_LE(max_abs_diff(h.physical_block(), expected), 1e-10);
}

struct OracleCase {
    std::vector<testing_support::ShellSpec> shells;
    int protons;
    int neutrons;
};

class FockOracleEquivalence : public ::testing::TestWithParam<OracleCase> {};

TEST_P(FockOracleEquivalence, BuildHamiltonianMatchesOracle) {
    const auto &param = GetParam();
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto data = parse_interaction_text(random_interaction_text(param.shells, seed));
        ASSERT_LE(data.orbitals.size(), 8U);
        const auto basis = enumerate_basis(data, param.protons, param.neutrons);
        const auto h = build_hamiltonian(data, basis);
        const oracle::FockSpace fock(static_cast<int>(data.orbitals.size()));
        const auto expected = fock.projected_hamiltonian(data, basis);
        EXPECT_LE(max_abs_diff(h.physical_block(), expected), 1e-10) << "seed " << seed;
    }
}

INSTANTIATE_TEST_SUITE_P(
    SmallSystems, FockOracleEquivalence,
    ::testing::Values(
        OracleCase{{{"0p3/2", 3, '-', +1}, {"0p1/2", 1, '-', +1}}, 0, 2},
        OracleCase{{{"0p3/2", 3, '-', +1}, {"0p1/2", 1, '-', +1}}, 0, 3},
        OracleCase{{{"1s1/2", 1, '+', -1}, {"0d3/2", 3, '+', -1}, {"1s1/2", 1, '+', +1}}, 1, 1},
        OracleCase{{{"0p1/2", 1, '-', -1}, {"1s1/2", 1, '+', -1}, {"0p1/2", 1, '-', +1},
                    {"1s1/2", 1, '+', +1}},
                   2, 1},
        OracleCase{{{"0p3/2", 3, '-', -1}, {"0p3/2", 3, '-', +1}}, 2, 2}));

TEST(BuildHamiltonian, CommutesWithTotalJz) {
    const auto data = parse_interaction_text(random_interaction_text(
        {{"0p3/2", 3, '-', -1}, {"0p1/2", 1, '-', -1}, {"0p3/2", 3, '-', +1}, {"0p1/2", 1, '-', +1}},
        5));
    const auto h = build_hamiltonian(data, enumerate_basis(data, 1, 1));
    const auto jz = total_twice_jz_matrix(data, h);
    const RMatrix comm = h.matrix * jz - jz * h.matrix;
    EXPECT_LE(comm.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(BuildHamiltonian, EmptyBasisIsDomainError) {
    const auto data = he6_like(1);
    EXPECT_THROW(build_hamiltonian(data, Basis{}), DomainError);
}

TEST(TermSparsity, EveryTermOnHe6BasisIsColumnSparse) {
    const auto data = he6_like(2);
    const auto basis = enumerate_basis(data, 0, 2);
    const auto report = verify_term_sparsity(data, basis);
    EXPECT_FALSE(report.terms.empty());
    EXPECT_TRUE(report.all_pass);
    for (const auto &t : report.terms) {
        EXPECT_LE(t.max_column_nonzeros, 1U);
    }
    // The summed Hamiltonian mixes many strings per column.
    EXPECT_GT(report.full_max_column_nonzeros, 1U);
}

TEST(TermSparsity, NumberOperatorProductIsDiagonal) {
    MSchemeHamiltonian h;
    h.n_orbitals = 2;
    h.one_body.assign(2, 0.0);
    h.two_body.push_back(TwoBodyTerm{{0, 1, 1, 0}, 1.0});
    const Basis basis({SlaterDeterminant({1, 0})});
    const auto report = verify_term_sparsity(h, basis);
    EXPECT_TRUE(report.all_pass);
    EXPECT_DOUBLE_EQ(build_hamiltonian(h, basis).matrix(0, 0), 1.0);
}
