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
 * The three batch studies: error vs shots, error vs number of evolved states,
 * and bias/variance of a single subspace matrix element vs shots.
 *
 * Every repeat is an independent job whose seed is derived from
 * (master seed, study, point, repeat), so output never depends on the thread
 * count or the scheduling order.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "shadowqsd/experiment/config.hpp"
#include "shadowqsd/experiment/fit.hpp"
#include "shadowqsd/parallel.hpp"
#include "shadowqsd/random.hpp"
#include "shadowqsd/shadow/shadow.hpp"
#include "shadowqsd/subspace/pipeline.hpp"

namespace shadowqsd::experiment {

using shadow::StateVector;
using subspace::PipelineOptions;

/// Tolerance of the global E_s >= E0 audit.
inline constexpr double kLowerBoundSlack = 1e-9;

enum StudyTag : std::uint64_t { kTagShots = 1, kTagSubspace = 2, kTagBias = 3 };

[[nodiscard]] inline std::uint64_t repeat_seed(std::uint64_t master, StudyTag tag, std::uint64_t point,
                                               std::uint64_t repeat) {
    return StreamKey{master, tag, point, repeat}.derive_seed();
}

/// One pipeline run, enough to replay it: the seed and the x value fix it.
struct RunRecord {
    std::size_t x = 0;
    std::size_t repeat = 0;
    std::uint64_t seed = 0;
    double energy = 0.0;
    double exact_energy = 0.0;
    double epsilon = 0.0;
    Eigen::Index kept_rank = 0;
};

struct ScalingRow {
    std::size_t x = 0;
    Summary epsilon;
    std::size_t runs = 0;
};

struct ScalingResult {
    Study study = Study::Shots;
    std::vector<ScalingRow> rows; ///< x strictly increasing
    std::optional<LineFit> fit;   ///< empty with fewer than two points
    std::vector<RunRecord> runs;
    std::optional<std::size_t> mnes;
    std::size_t fixed = 0; ///< m for the shots study, M for the subspace study
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t lower_bound_violations() const {
        return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(), [](const RunRecord &r) {
            return r.energy < r.exact_energy - kLowerBoundSlack;
        }));
    }
};

[[nodiscard]] inline StateVector initial_state(const ReducedHamiltonian &h, const ExperimentConfig &cfg) {
    if (cfg.initial_index >= h.dim_physical) {
        throw ConfigError("initial = " + std::to_string(cfg.initial_index) +
                          " is outside the physical basis (dimension " + std::to_string(h.dim_physical) + ")");
    }
    return StateVector::basis_state(h.n_qubits, cfg.initial_index);
}

[[nodiscard]] inline std::optional<std::size_t> model_mnes(const ReducedHamiltonian &h,
                                                           const ExperimentConfig &cfg) {
    return subspace::compute_mnes(h, initial_state(h, cfg), cfg.dt, cfg.mnes_tol).mnes;
}

namespace detail {

/// Runs `repeats` pipelines per (x, m, shots) point and aggregates them.
template <typename PointFn>
ScalingResult run_points(const ReducedHamiltonian &h, const ExperimentConfig &cfg, StudyTag tag,
                         const std::vector<std::size_t> &xs, PointFn &&point) {
    ScalingResult out;
    const StateVector init = initial_state(h, cfg);
    const std::size_t jobs = xs.size() * cfg.repeats;
    out.runs.resize(jobs);
    parallel_for(jobs, resolve_threads(cfg.threads), [&](std::size_t k) {
        const std::size_t p = k / cfg.repeats;
        const std::size_t r = k % cfg.repeats;
        const auto [m, shots] = point(xs[p]);
        PipelineOptions opt;
        opt.shots = shots;
        opt.seed = repeat_seed(cfg.seed, tag, xs[p], r);
        opt.initial = init;
        const auto res = subspace::shadow_qsd_ground_energy(h, subspace::time_grid(m, cfg.dt), opt);
        out.runs[k] = RunRecord{xs[p], r, opt.seed, res.energy, res.exact_energy, res.error(), res.kept_rank};
    });
    std::vector<double> xv;
    std::vector<double> inv;
    bool fittable = true;
    for (std::size_t p = 0; p < xs.size(); ++p) {
        std::vector<double> eps;
        for (std::size_t r = 0; r < cfg.repeats; ++r) {
            eps.push_back(out.runs[p * cfg.repeats + r].epsilon);
        }
        out.rows.push_back(ScalingRow{xs[p], summarize(eps), cfg.repeats});
        xv.push_back(static_cast<double>(xs[p]));
        fittable = fittable && out.rows.back().epsilon.median > 0.0;
        inv.push_back(fittable ? 1.0 / out.rows.back().epsilon.median : 0.0);
    }
    if (xs.size() >= 2 && fittable) {
        out.fit = tag == kTagShots ? fit_loglog_slope(xv, inv) : fit_semilog_slope(xv, inv);
    } else if (xs.size() >= 2) {
        out.warnings.push_back("a median error is exactly zero; slope left undefined");
    }
    return out;
}

} // namespace detail

/// Median |E_s - E0| vs snapshots per state at fixed m; slope of log(1/eps) vs log N.
[[nodiscard]] inline ScalingResult run_shots_scaling(const ReducedHamiltonian &h, const ExperimentConfig &cfg) {
    const auto mnes = model_mnes(h, cfg);
    if (!cfg.m && !mnes) {
        throw ConfigError("the initial state has no finite MNES at mnes_tol = " + std::to_string(cfg.mnes_tol) +
                          "; set 'm' explicitly");
    }
    const std::size_t m = cfg.m ? *cfg.m : *mnes;
    auto out = detail::run_points(h, cfg, kTagShots, cfg.shots,
                                  [m](std::size_t n) { return std::pair{m, n}; });
    out.study = Study::Shots;
    out.mnes = mnes;
    out.fixed = m;
    return out;
}

/// Median error vs m at fixed shots (the first `shots` entry); slope of log(1/eps) vs m.
[[nodiscard]] inline ScalingResult run_subspace_scaling(const ReducedHamiltonian &h,
                                                        const ExperimentConfig &cfg) {
    const auto mnes = model_mnes(h, cfg);
    std::vector<std::size_t> ms = cfg.m_values;
    if (ms.empty()) {
        if (!mnes) {
            throw ConfigError("no finite MNES at mnes_tol = " + std::to_string(cfg.mnes_tol) +
                              "; give 'm_values' explicitly");
        }
        for (std::size_t m = *mnes; m <= *mnes + 5; ++m) {
            ms.push_back(m);
        }
    }
    std::vector<std::string> warnings;
    std::vector<std::size_t> clamped;
    for (const auto m : ms) {
        const std::size_t c = std::min(m, h.dim_physical);
        if (c != m) {
            warnings.push_back("m = " + std::to_string(m) + " exceeds the physical dimension " +
                               std::to_string(h.dim_physical) + "; clamped");
        }
        if (clamped.empty() || clamped.back() != c) {
            clamped.push_back(c);
        }
    }
    const std::size_t shots = cfg.shots.front();
    if (cfg.shots.size() > 1) {
        warnings.push_back("subspace study uses only the first shots value (" + std::to_string(shots) + ")");
    }
    auto out = detail::run_points(h, cfg, kTagSubspace, clamped,
                                  [shots](std::size_t m) { return std::pair{m, shots}; });
    out.study = Study::Subspace;
    out.mnes = mnes;
    out.fixed = shots;
    out.warnings.insert(out.warnings.begin(), warnings.begin(), warnings.end());
    return out;
}

// ---------------------------------------------------------------------------
// Bias and variance of one matrix element

enum class BiasPattern { Worst, Distinct, Exact };

[[nodiscard]] inline std::string pattern_name(BiasPattern p) {
    switch (p) {
    case BiasPattern::Worst:
        return "worst";
    case BiasPattern::Distinct:
        return "distinct";
    case BiasPattern::Exact:
        return "exact";
    }
    return "?";
}

struct BiasRow {
    BiasPattern pattern = BiasPattern::Worst;
    std::size_t shots = 0;
    double mean_deviation = 0.0; ///< mean of Tr(rho rho H rho rho) - estimate
    double stderr_deviation = 0.0;
    double variance = 0.0; ///< sample variance of the estimate
    std::size_t runs = 0;
};

struct BiasResult {
    std::vector<BiasRow> rows; ///< grouped by pattern, shots increasing
    std::optional<LineFit> bias_fit;     ///< log|mean deviation| vs log M, worst pattern
    std::optional<LineFit> variance_fit; ///< log variance vs log M, worst pattern
    std::size_t dim = 0;
    std::vector<std::string> warnings;
};

/**
 * Monte-Carlo bias and variance of one subspace matrix element vs shots M.
 *
 * worst: one shadow of e^{-iH dt}|init> fills all four slots.
 * distinct: four independent shadows of the states at dt, 2dt, 3dt, 4dt.
 * exact: the exact density matrices (no sampling, zero deviation).
 */
[[nodiscard]] inline BiasResult run_bias_variance_study(const ReducedHamiltonian &h,
                                                        const ExperimentConfig &cfg) {
    const StateVector init = initial_state(h, cfg);
    const subspace::SpectralPropagator prop(h.matrix);
    const CMatrix hc = h.complex_matrix();
    std::vector<StateVector> psi;
    std::vector<CMatrix> rho;
    for (int k = 1; k <= 4; ++k) {
        psi.push_back(prop.evolve(k * cfg.dt, init));
        rho.push_back(psi.back().amplitudes() * psi.back().amplitudes().adjoint());
    }
    const double truth_worst = (rho[0] * rho[0] * hc * rho[0] * rho[0]).trace().real();
    const double truth_distinct = (rho[1] * rho[0] * hc * rho[2] * rho[3]).trace().real();

    BiasResult out;
    out.dim = h.dim();
    const std::size_t threads = resolve_threads(cfg.threads);
    const std::size_t reps = cfg.repeats;
    for (const auto pattern : {BiasPattern::Worst, BiasPattern::Distinct, BiasPattern::Exact}) {
        for (std::size_t p = 0; p < cfg.shots.size(); ++p) {
            const std::size_t shots = cfg.shots[p];
            std::vector<double> dev(reps);
            std::vector<double> est(reps);
            parallel_for(reps, threads, [&](std::size_t r) {
                const std::uint64_t seed = repeat_seed(cfg.seed, kTagBias, shots, r);
                double value = 0.0;
                double truth = 0.0;
                if (pattern == BiasPattern::Worst) {
                    const CMatrix s = shadow::collect_shadow(psi[0], shots, seed, 0).rho;
                    const CMatrix s2 = s * s;
                    value = (s2 * hc * s2).trace().real();
                    truth = truth_worst;
                } else if (pattern == BiasPattern::Distinct) {
                    std::vector<CMatrix> s;
                    for (std::size_t k = 0; k < 4; ++k) {
                        s.push_back(shadow::collect_shadow(psi[k], shots, seed, k).rho);
                    }
                    value = (s[1] * s[0] * hc * s[2] * s[3]).trace().real();
                    truth = truth_distinct;
                } else {
                    value = (rho[0] * rho[0] * hc * rho[0] * rho[0]).trace().real();
                    truth = truth_worst;
                }
                dev[r] = truth - value;
                est[r] = value;
            });
            const Summary d = summarize(dev);
            const Summary e = summarize(est);
            out.rows.push_back(BiasRow{pattern, shots, d.mean,
                                       d.stddev / std::sqrt(static_cast<double>(reps)),
                                       e.stddev * e.stddev, reps});
        }
    }
    if (cfg.shots.size() >= 2) {
        std::vector<double> ms;
        std::vector<double> bias;
        std::vector<double> var;
        for (const auto &row : out.rows) {
            if (row.pattern == BiasPattern::Worst) {
                ms.push_back(static_cast<double>(row.shots));
                bias.push_back(std::abs(row.mean_deviation));
                var.push_back(row.variance);
            }
        }
        try {
            out.bias_fit = fit_loglog_slope(ms, bias);
            out.variance_fit = fit_loglog_slope(ms, var);
        } catch (const DomainError &) {
            out.warnings.push_back("a worst-case bias or variance is zero; slope left undefined");
        }
    }
    return out;
}

} // namespace shadowqsd::experiment
