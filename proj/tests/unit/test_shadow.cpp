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

#include <cmath>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "shadowqsd/shadow/shadow.hpp"

using namespace shadowqsd;
using namespace shadowqsd::shadow;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
    RandomStream rng({seed, 77, 0, 0});
    CVector v(1 << n);
    for (auto &a : v) {
        a = Complex(rng.normal(), rng.normal());
    }
    return StateVector(v.normalized());
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += std::log(x[k]);
        my += std::log(y[k]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
        sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
    }
    return sxy / sxx;
}

} // namespace

TEST(BornSampleTest, FrequenciesFollowBornRule) {
    const auto psi = random_state(3, 5);
    std::vector<double> counts(8, 0.0);
    const int draws = 80000;
    RandomStream rng({1, 2, 3, 4});
    for (int k = 0; k < draws; ++k) {
        counts[born_sample(psi, rng)] += 1;
    }
    double stat = 0.0;
    for (int z = 0; z < 8; ++z) {
        const double e = draws * std::norm(psi[static_cast<std::size_t>(z)]);
        stat += (counts[z] - e) * (counts[z] - e) / e;
    }
    boost::math::chi_squared dist(7);
    EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 1e-3);
}

TEST(BornSampleTest, NeverReturnsZeroProbabilityOutcome) {
    const auto psi = StateVector::basis_state(3, 6);
    RandomStream rng({4, 4, 4, 4});
    for (int k = 0; k < 1000; ++k) {
        EXPECT_EQ(born_sample(psi, rng), 6U);
    }
}

TEST(BornSampleTest, UnnormalizedStateIsAContractViolation) {
    CVector v = CVector::Zero(4);
    v(0) = 1.0 + 1e-5;
    RandomStream rng({0, 0, 0, 0});
    EXPECT_THROW((void)born_sample(StateVector(v), rng), ContractError);
    v(0) = 1.0 + 1e-8;
    EXPECT_NO_THROW((void)born_sample(StateVector(v), rng));
}

TEST(ShadowTest, SnapshotIsCliffordImageOfOutcome) {
    const auto psi = random_state(3, 8);
    const auto snap = take_snapshot(psi, snapshot_key(3, 0, 17));
    EXPECT_TRUE(snap.phi.is_normalized(1e-12));
    const auto again = replay_snapshot(snap.key, 3, snap.outcome);
    EXPECT_EQ((again.amplitudes() - snap.phi.amplitudes()).norm(), 0.0);
}

TEST(ShadowTest, EstimatorIsHermitianWithUnitTrace) {
    const auto psi = random_state(4, 9);
    const CMatrix rho = materialize(take_snapshots(psi, 300, 21));
    EXPECT_EQ((rho - rho.adjoint()).norm(), 0.0);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_EQ(rho.trace().imag(), 0.0);
}

TEST(ShadowTest, SingleSnapshotTraceIsOne) {
    const auto psi = random_state(2, 2);
    const CMatrix rho = materialize(take_snapshots(psi, 1, 4));
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
}

TEST(ShadowTest, StreamingMatchesMaterializedBitForBit) {
    const auto psi = random_state(3, 10);
    for (const std::size_t m : {1UL, 127UL, 128UL, 129UL, 1000UL}) {
        const CMatrix a = materialize(take_snapshots(psi, m, 42, 5));
        const auto b = collect_shadow(psi, m, 42, 5, 1);
        const auto c = collect_shadow(psi, m, 42, 5, 3);
        EXPECT_EQ((a - b.rho).norm(), 0.0) << m;
        EXPECT_EQ((a - c.rho).norm(), 0.0) << m;
    }
}

TEST(ShadowTest, DifferentStateIndicesGiveIndependentStreams) {
    const auto psi = random_state(3, 10);
    const auto a = collect_shadow(psi, 50, 42, 0);
    const auto b = collect_shadow(psi, 50, 42, 1);
    EXPECT_GT((a.rho - b.rho).norm(), 0.0);
}

TEST(ShadowTest, EstimatorIsUnbiased) {
    // Average of independent estimators approaches rho entrywise.
    const auto psi = random_state(2, 11);
    const CMatrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
    const int repeats = 400;
    const std::size_t m = 100;
    CMatrix mean = CMatrix::Zero(4, 4);
    RMatrix sq = RMatrix::Zero(4, 4);
    for (int r = 0; r < repeats; ++r) {
        const auto est = collect_shadow(psi, m, 1000 + static_cast<std::uint64_t>(r));
        mean += est.rho;
        sq += est.rho.cwiseAbs2();
    }
    mean /= repeats;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double var = sq(i, j) / repeats - std::norm(mean(i, j));
            const double se = std::sqrt(var / repeats);
            EXPECT_LT(std::abs(mean(i, j) - rho(i, j)), 5.0 * se + 1e-12);
        }
    }
}

TEST(ShadowTest, FrobeniusErrorShrinksAsInverseSquareRoot) {
    const auto psi = random_state(3, 12);
    const CMatrix rho = psi.amplitudes() * psi.amplitudes().adjoint();
    std::vector<double> ms;
    std::vector<double> errs;
    for (const std::size_t m : {100UL, 400UL, 1600UL, 6400UL}) {
        double acc = 0.0;
        const int repeats = 10;
        for (int r = 0; r < repeats; ++r) {
            acc += (collect_shadow(psi, m, 500 + static_cast<std::uint64_t>(r)).rho - rho).norm();
        }
        ms.push_back(static_cast<double>(m));
        errs.push_back(acc / repeats);
    }
    EXPECT_NEAR(loglog_slope(ms, errs), -0.5, 0.15);
}

TEST(ShadowTest, ZeroSnapshotsRejected) {
    const auto psi = random_state(2, 1);
    EXPECT_THROW((void)take_snapshots(psi, 0, 1), DomainError);
    EXPECT_THROW((void)collect_shadow(psi, 0, 1), DomainError);
}

TEST(SnapshotDumpTest, RoundTripAndReplay) {
    const auto psi = random_state(3, 13);
    const auto est = collect_shadow(psi, 20, 77, 2, 1, true);
    SnapshotDump dump{kSnapshotDumpVersion, 77, 3, {}};
    for (std::size_t k = 0; k < est.outcomes.size(); ++k) {
        dump.records.push_back({2, k, est.outcomes[k]});
    }
    std::stringstream buf;
    write_snapshot_csv(buf, dump);
    const auto back = read_snapshot_csv(buf);
    EXPECT_EQ(back.seed, 77U);
    EXPECT_EQ(back.n_qubits, 3U);
    ASSERT_EQ(back.records, dump.records);
    const auto stored = take_snapshots(psi, 20, 77, 2);
    for (const auto &r : back.records) {
        const auto phi = replay_snapshot(snapshot_key(back.seed, r.state_index, r.snapshot_index),
                                         back.n_qubits, r.outcome);
        EXPECT_EQ((phi.amplitudes() - stored.snapshots[r.snapshot_index].phi.amplitudes()).norm(), 0.0);
    }
}

TEST(SnapshotDumpTest, RejectsUnknownVersionAndBadRows) {
    std::istringstream v2("# shadowqsd-snapshots v2\n# seed=1 n_qubits=2\nstate_index,snapshot_index,outcome\n");
    EXPECT_THROW((void)read_snapshot_csv(v2), ParseError);
    std::istringstream bad("# shadowqsd-snapshots v1\n# seed=1 n_qubits=2\nstate_index,snapshot_index,outcome\n0,1,9\n");
    try {
        (void)read_snapshot_csv(bad);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 4U);
    }
}
