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
 * End-to-end ground-energy estimate and the minimum number of evolved states.
 */

#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "shadowqsd/common.hpp"
#include "shadowqsd/shadow/shadow.hpp"
#include "shadowqsd/subspace/evolution.hpp"
#include "shadowqsd/subspace/gevp.hpp"
#include "shadowqsd/subspace/subspace.hpp"

namespace shadowqsd::subspace {

enum class AssemblyPath { Dense, Factorized };

struct PipelineOptions {
    std::size_t shots = 1000;          ///< snapshots per evolved state
    std::uint64_t seed = 0;
    double drop_tolerance = kDefaultDropTolerance;
    bool exact_density = false;        ///< use |psi><psi| instead of shadows
    std::size_t threads = 1;
    AssemblyPath path = AssemblyPath::Dense;
    std::optional<StateVector> initial; ///< defaults to |0...0>
};

struct PipelineResult {
    double energy = 0.0;       ///< lowest generalized eigenvalue
    double exact_energy = 0.0; ///< physical-block ground energy
    Eigen::Index kept_rank = 0;
    RVector overlap_spectrum;
    std::vector<std::size_t> shots_per_state;
    double spectral_bound = 0.0; ///< max |eigenvalue| of the padded H, reported only

    [[nodiscard]] double error() const { return std::abs(energy - exact_energy); }
};

/**
 * @brief Evolves the initial state to every time, estimates each state, and
 * solves the vectorized subspace problem.
 *
 * State j draws its snapshots from the streams (seed, j, k), so a fixed seed
 * gives bit-identical results regardless of the thread count.
 */
[[nodiscard]] inline PipelineResult shadow_qsd_ground_energy(const ReducedHamiltonian &h,
                                                             const std::vector<double> &times,
                                                             const PipelineOptions &opt) {
    if (times.empty()) {
        throw DomainError("shadow_qsd_ground_energy: times must be non-empty");
    }
    if (opt.shots == 0 && !opt.exact_density) {
        throw DomainError("shadow_qsd_ground_energy: need at least one shot per state");
    }
    const SpectralPropagator prop(h.matrix);
    const StateVector initial = opt.initial ? *opt.initial : zero_state(h);
    const CMatrix hc = h.complex_matrix();

    PipelineResult res;
    res.exact_energy = exact_ground_energy(h).energy;
    res.spectral_bound = prop.eigenvalues().cwiseAbs().maxCoeff();
    SubspaceProblem problem;
    if (opt.path == AssemblyPath::Factorized && !opt.exact_density) {
        std::vector<shadow::ClassicalShadow> shadows;
        for (std::size_t j = 0; j < times.size(); ++j) {
            shadows.push_back(shadow::take_snapshots(prop.evolve(times[j], initial), opt.shots, opt.seed,
                                                     j, opt.threads));
            res.shots_per_state.push_back(opt.shots);
        }
        problem = assemble_subspace_factorized(shadows, hc, opt.threads);
    } else {
        std::vector<CMatrix> rhos;
        for (std::size_t j = 0; j < times.size(); ++j) {
            const StateVector psi = prop.evolve(times[j], initial);
            if (opt.exact_density) {
                rhos.push_back(psi.amplitudes() * psi.amplitudes().adjoint());
                res.shots_per_state.push_back(0);
            } else {
                rhos.push_back(shadow::collect_shadow(psi, opt.shots, opt.seed, j, opt.threads).rho);
                res.shots_per_state.push_back(opt.shots);
            }
        }
        problem = assemble_subspace(rhos, hc);
    }
    const auto sol = solve_gevp(problem.h_eff, problem.s, opt.drop_tolerance);
    res.energy = sol.lowest();
    res.kept_rank = sol.kept_rank;
    res.overlap_spectrum = sol.overlap_spectrum;
    return res;
}

/// Convenience overload with default options.
[[nodiscard]] inline PipelineResult shadow_qsd_ground_energy(const ReducedHamiltonian &h,
                                                             const std::vector<double> &times,
                                                             std::size_t shots, std::uint64_t seed) {
    PipelineOptions opt;
    opt.shots = shots;
    opt.seed = seed;
    return shadow_qsd_ground_energy(h, times, opt);
}

/// One diagnostics row: `E_s,E0,epsilon,kept_rank,overlap_spectrum` (spectrum space separated).
inline void write_diagnostics_csv(std::ostream &out, const PipelineResult &r, bool header = true) {
    if (header) {
        out << "E_s,E0,epsilon,kept_rank,overlap_spectrum\n";
    }
    out.precision(17);
    out << r.energy << ',' << r.exact_energy << ',' << r.error() << ',' << r.kept_rank << ',';
    for (Eigen::Index k = 0; k < r.overlap_spectrum.size(); ++k) {
        out << (k ? " " : "") << r.overlap_spectrum(k);
    }
    out << '\n';
}

// ---------------------------------------------------------------------------
// MNES

struct MnesResult {
    std::optional<std::size_t> mnes;  ///< empty: no finite MNES at this tolerance
    std::vector<double> captured;     ///< squared projection after j = 1, 2, ...
    double ground_overlap = 0.0;      ///< |<ground|initial>|^2
};

/// Relative width used to decide which physical eigenvalues are degenerate with E0.
inline constexpr double kGroundDegeneracyTol = 1e-9;

/**
 * @brief Smallest m whose evolved states span the ground vector to 1 - tol.
 *
 * The ground vector is the normalized projection of `initial` onto the
 * physical ground eigenspace, which is the component any evolved family can
 * reach. Evolved vectors are orthonormalized by two-pass Gram-Schmidt;
 * numerically dependent ones add nothing. The scan stops after
 * `dim_physical` states.
 */
[[nodiscard]] inline MnesResult compute_mnes(const ReducedHamiltonian &h, const StateVector &initial,
                                             double dt, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw DomainError("compute_mnes: tolerance must lie in (0, 1)");
    }
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw DomainError("compute_mnes: time step must be positive and finite");
    }
    const RMatrix block = h.physical_block();
    Eigen::SelfAdjointEigenSolver<RMatrix> es(block);
    if (es.info() != Eigen::Success) {
        throw NumericError("compute_mnes: eigendecomposition failed");
    }
    const RVector &ev = es.eigenvalues();
    const double width = kGroundDegeneracyTol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    const auto dphys = static_cast<Eigen::Index>(h.dim_physical);
    CVector ground = CVector::Zero(static_cast<Eigen::Index>(h.dim()));
    for (Eigen::Index k = 0; k < ev.size() && ev(k) <= ev(0) + width; ++k) {
        const CVector u = es.eigenvectors().col(k).cast<Complex>();
        ground.head(dphys) += u * u.dot(initial.amplitudes().head(dphys));
    }
    MnesResult out;
    out.ground_overlap = ground.squaredNorm();
    if (out.ground_overlap < 1e-24) {
        return out;
    }
    ground /= std::sqrt(out.ground_overlap);

    const SpectralPropagator prop(h.matrix);
    std::vector<CVector> q;
    for (std::size_t j = 1; j <= h.dim_physical; ++j) {
        CVector v = prop.evolve(static_cast<double>(j) * dt, initial).amplitudes();
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : q) {
                v -= b * b.dot(v);
            }
        }
        const double nv = v.norm();
        if (nv > 1e-10) {
            q.push_back(v / nv);
        }
        double captured = 0.0;
        for (const auto &b : q) {
            captured += std::norm(b.dot(ground));
        }
        out.captured.push_back(captured);
        if (captured >= 1.0 - tol) {
            out.mnes = j;
            return out;
        }
    }
    return out;
}

} // namespace shadowqsd::subspace
