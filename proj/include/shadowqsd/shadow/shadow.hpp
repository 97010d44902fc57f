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
 * Classical shadows from random global Clifford measurements.
 *
 * A snapshot rotates the state by a uniform Clifford C, measures every qubit
 * in the computational basis, and keeps |phi> = C^dagger |z>. The estimator
 * is rho_hat = (1/M) sum_k [(d+1)|phi_k><phi_k| - I].
 *
 * Snapshot k of state s under master seed `seed` draws all of its randomness
 * (Clifford first, then the Born outcome) from the stream keyed by
 * (seed, s, k), so any snapshot can be regenerated on its own.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "shadowqsd/common.hpp"
#include "shadowqsd/parallel.hpp"
#include "shadowqsd/random.hpp"
#include "shadowqsd/shadow/clifford.hpp"
#include "shadowqsd/shadow/statevector.hpp"

namespace shadowqsd::shadow {

/// Snapshots per partial sum. Fixed so results do not depend on threading.
inline constexpr std::size_t kShadowChunk = 128;

/// Fourth key coordinate reserved for snapshot streams.
inline constexpr std::uint64_t kSnapshotDomain = 0x5348;

[[nodiscard]] constexpr StreamKey snapshot_key(std::uint64_t seed, std::uint64_t state_index,
                                               std::uint64_t snapshot_index) noexcept {
    return StreamKey{seed, state_index, snapshot_index, kSnapshotDomain};
}

/// One computational-basis outcome drawn with probability |<z|psi>|^2.
[[nodiscard]] inline std::uint64_t born_sample(const StateVector &state, RandomStream &rng) {
    const auto &a = state.amplitudes();
    const double total = a.squaredNorm();
    if (!(std::abs(total - 1.0) <= 1e-6)) {
        throw ContractError("born_sample: state norm^2 = " + std::to_string(total) +
                            " is not 1 within 1e-6");
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::uint64_t last_nonzero = 0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double p = std::norm(a(k));
        if (p > 0.0) {
            last_nonzero = static_cast<std::uint64_t>(k);
        }
        acc += p;
        if (u < acc) {
            return static_cast<std::uint64_t>(k);
        }
    }
    return last_nonzero;
}

struct ShadowSnapshot {
    StateVector phi;
    std::uint64_t outcome = 0;
    StreamKey key;
};

/// Regenerates C^dagger |outcome> for a snapshot whose outcome is known.
[[nodiscard]] inline StateVector replay_snapshot(const StreamKey &key, std::size_t n_qubits,
                                                 std::uint64_t outcome) {
    RandomStream rng(key);
    const auto clifford = sample_clifford_circuit(n_qubits, rng);
    return apply_circuit(clifford.circuit, StateVector::basis_state(n_qubits, outcome), true);
}

[[nodiscard]] inline ShadowSnapshot take_snapshot(const StateVector &state, const StreamKey &key) {
    const std::size_t n = state.n_qubits();
    if (n == 0 || n > kMaxDenseQubits) {
        throw DomainError("take_snapshot: unsupported qubit count");
    }
    RandomStream rng(key);
    const auto clifford = sample_clifford_circuit(n, rng);
    const StateVector rotated = apply_circuit(clifford.circuit, state);
    const std::uint64_t z = born_sample(rotated, rng);
    return ShadowSnapshot{apply_circuit(clifford.circuit, StateVector::basis_state(n, z), true), z, key};
}

struct ClassicalShadow {
    std::size_t n_qubits = 0;
    std::uint64_t seed = 0;
    std::uint64_t state_index = 0;
    std::vector<ShadowSnapshot> snapshots;
};

[[nodiscard]] inline ClassicalShadow take_snapshots(const StateVector &state, std::size_t n_snapshots,
                                                    std::uint64_t seed, std::uint64_t state_index = 0,
                                                    std::size_t threads = 1) {
    if (n_snapshots == 0) {
        throw DomainError("take_snapshots: need at least one snapshot");
    }
    ClassicalShadow shadow{state.n_qubits(), seed, state_index, {}};
    shadow.snapshots.resize(n_snapshots);
    parallel_for(n_snapshots, threads, [&](std::size_t k) {
        shadow.snapshots[k] = take_snapshot(state, snapshot_key(seed, state_index, k));
    });
    return shadow;
}

namespace detail {

/// Lower triangle of sum_k phi_k phi_k^dagger over the columns of `phis`.
[[nodiscard]] inline CMatrix chunk_outer_sum(const CMatrix &phis) {
    CMatrix s = CMatrix::Zero(phis.rows(), phis.rows());
    s.selfadjointView<Eigen::Lower>().rankUpdate(phis);
    return s;
}

[[nodiscard]] inline CMatrix pairwise_sum(const std::vector<CMatrix> &parts, std::size_t lo,
                                          std::size_t hi) {
    if (hi - lo == 1) {
        return parts[lo];
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(parts, lo, mid) + pairwise_sum(parts, mid, hi);
}

/// (d+1)/M * S - I from the lower triangle of S, exactly Hermitian.
[[nodiscard]] inline CMatrix finish_estimator(const std::vector<CMatrix> &parts, std::size_t m) {
    CMatrix lower = pairwise_sum(parts, 0, parts.size());
    const Eigen::Index d = lower.rows();
    const double scale = static_cast<double>(d + 1) / static_cast<double>(m);
    CMatrix rho(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        rho(j, j) = Complex(scale * lower(j, j).real() - 1.0, 0.0);
        for (Eigen::Index i = j + 1; i < d; ++i) {
            const Complex v = scale * lower(i, j);
            rho(i, j) = v;
            rho(j, i) = std::conj(v);
        }
    }
    return rho;
}

} // namespace detail

/// Dense shadow estimator from stored snapshots.
[[nodiscard]] inline CMatrix materialize(const ClassicalShadow &shadow) {
    const std::size_t m = shadow.snapshots.size();
    if (m == 0) {
        throw DomainError("materialize: shadow has no snapshots");
    }
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << shadow.n_qubits);
    const std::size_t n_chunks = (m + kShadowChunk - 1) / kShadowChunk;
    std::vector<CMatrix> parts(n_chunks);
    for (std::size_t c = 0; c < n_chunks; ++c) {
        const std::size_t lo = c * kShadowChunk;
        const std::size_t hi = std::min(m, lo + kShadowChunk);
        CMatrix phis(d, static_cast<Eigen::Index>(hi - lo));
        for (std::size_t k = lo; k < hi; ++k) {
            phis.col(static_cast<Eigen::Index>(k - lo)) = shadow.snapshots[k].phi.amplitudes();
        }
        parts[c] = detail::chunk_outer_sum(phis);
    }
    return detail::finish_estimator(parts, m);
}

struct ShadowEstimate {
    CMatrix rho;
    std::size_t n_snapshots = 0;
    std::vector<std::uint64_t> outcomes; ///< filled only on request
};

/**
 * @brief Streaming shadow estimate that never stores the snapshot vectors.
 *
 * Bit-identical to materialize(take_snapshots(...)) for the same seed and
 * state index, whatever the thread count.
 */
[[nodiscard]] inline ShadowEstimate collect_shadow(const StateVector &state, std::size_t n_snapshots,
                                                   std::uint64_t seed, std::uint64_t state_index = 0,
                                                   std::size_t threads = 1, bool keep_outcomes = false) {
    if (n_snapshots == 0) {
        throw DomainError("collect_shadow: need at least one snapshot");
    }
    const auto d = static_cast<Eigen::Index>(state.dim());
    const std::size_t n_chunks = (n_snapshots + kShadowChunk - 1) / kShadowChunk;
    std::vector<CMatrix> parts(n_chunks);
    ShadowEstimate est;
    est.n_snapshots = n_snapshots;
    if (keep_outcomes) {
        est.outcomes.resize(n_snapshots);
    }
    parallel_for(n_chunks, threads, [&](std::size_t c) {
        const std::size_t lo = c * kShadowChunk;
        const std::size_t hi = std::min(n_snapshots, lo + kShadowChunk);
        CMatrix phis(d, static_cast<Eigen::Index>(hi - lo));
        for (std::size_t k = lo; k < hi; ++k) {
            auto snap = take_snapshot(state, snapshot_key(seed, state_index, k));
            phis.col(static_cast<Eigen::Index>(k - lo)) = snap.phi.amplitudes();
            if (keep_outcomes) {
                est.outcomes[k] = snap.outcome;
            }
        }
        parts[c] = detail::chunk_outer_sum(phis);
    });
    est.rho = detail::finish_estimator(parts, n_snapshots);
    return est;
}

// ---------------------------------------------------------------------------
// Snapshot dumps

inline constexpr int kSnapshotDumpVersion = 1;

struct SnapshotRecord {
    std::uint64_t state_index = 0;
    std::uint64_t snapshot_index = 0;
    std::uint64_t outcome = 0;

    friend bool operator==(const SnapshotRecord &, const SnapshotRecord &) = default;
};

struct SnapshotDump {
    int version = kSnapshotDumpVersion;
    std::uint64_t seed = 0;
    std::size_t n_qubits = 0;
    std::vector<SnapshotRecord> records;
};

/// Outcomes plus the stream coordinates needed to replay each Clifford.
inline void write_snapshot_csv(std::ostream &out, const SnapshotDump &dump) {
    out << "# shadowqsd-snapshots v" << dump.version << '\n';
    out << "# seed=" << dump.seed << " n_qubits=" << dump.n_qubits << '\n';
    out << "state_index,snapshot_index,outcome\n";
    for (const auto &r : dump.records) {
        out << r.state_index << ',' << r.snapshot_index << ',' << r.outcome << '\n';
    }
}

[[nodiscard]] inline SnapshotDump read_snapshot_csv(std::istream &in) {
    SnapshotDump dump;
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() {
        if (!std::getline(in, line)) {
            throw ParseError(line_no + 1, "unexpected end of snapshot dump");
        }
        ++line_no;
    };
    next_line();
    const std::string magic = "# shadowqsd-snapshots v";
    if (line.rfind(magic, 0) != 0) {
        throw ParseError(line_no, "missing snapshot dump header");
    }
    try {
        dump.version = std::stoi(line.substr(magic.size()));
    } catch (const std::exception &) {
        throw ParseError(line_no, "unreadable snapshot dump version");
    }
    if (dump.version != kSnapshotDumpVersion) {
        throw ParseError(line_no, "unsupported snapshot dump version " + std::to_string(dump.version));
    }
    next_line();
    {
        std::istringstream meta(line);
        std::string hash;
        std::string seed_kv;
        std::string qubits_kv;
        meta >> hash >> seed_kv >> qubits_kv;
        if (hash != "#" || seed_kv.rfind("seed=", 0) != 0 || qubits_kv.rfind("n_qubits=", 0) != 0) {
            throw ParseError(line_no, "expected '# seed=<u64> n_qubits=<n>'");
        }
        try {
            dump.seed = std::stoull(seed_kv.substr(5));
            dump.n_qubits = std::stoul(qubits_kv.substr(9));
        } catch (const std::exception &) {
            throw ParseError(line_no, "unreadable seed or qubit count");
        }
    }
    next_line();
    if (line != "state_index,snapshot_index,outcome") {
        throw ParseError(line_no, "unexpected column header");
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        SnapshotRecord r;
        char c1 = 0;
        char c2 = 0;
        std::istringstream row(line);
        if (!(row >> r.state_index >> c1 >> r.snapshot_index >> c2 >> r.outcome) || c1 != ',' ||
            c2 != ',') {
            throw ParseError(line_no, "malformed snapshot record");
        }
        if (dump.n_qubits < 64 && r.outcome >= (std::uint64_t{1} << dump.n_qubits)) {
            throw ParseError(line_no, "outcome exceeds the register size");
        }
        dump.records.push_back(r);
    }
    return dump;
}

} // namespace shadowqsd::shadow
