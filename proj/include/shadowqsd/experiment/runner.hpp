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
 * Config-driven entry points behind the `shadowqsd` CLI.
 *
 * Output files (all in the config's `output` directory):
 *
 *   results.csv   shots/subspace: study,x,median_epsilon,q25_epsilon,
 *                 q75_epsilon,mean_epsilon,std_epsilon,runs,mnes
 *                 bias: study,pattern,M,mean_deviation,stderr_deviation,variance,runs
 *   runs.csv      shots/subspace only: study,x,repeat,seed,E_s,E0,epsilon,kept_rank
 *   fit.csv       study,quantity,slope,intercept,stderr,points (nan when undefined)
 *   manifest.txt  the config echo plus `#` metadata; it is itself a valid config
 *
 * Nothing time- or host-dependent is written, so equal configs give equal bytes.
 */

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Core>

#include "shadowqsd/experiment/config.hpp"
#include "shadowqsd/experiment/models.hpp"
#include "shadowqsd/experiment/studies.hpp"

namespace shadowqsd::experiment {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumeric = 3 };

namespace detail {

inline void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
        throw IoError("cannot write '" + path.string() + "'");
    }
}

inline std::filesystem::path prepare_output(const ExperimentConfig &cfg) {
    const std::filesystem::path dir(cfg.output);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    return dir;
}

inline std::ostream &num(std::ostream &out) {
    out.precision(17);
    return out;
}

inline std::string fit_row(const std::string &study, const std::string &quantity,
                           const std::optional<LineFit> &fit, std::size_t points) {
    std::ostringstream out;
    num(out) << study << ',' << quantity << ',';
    if (fit) {
        out << fit->slope << ',' << fit->intercept << ',' << fit->stderr_slope << ',' << fit->points;
    } else {
        out << "nan,nan,nan," << points;
    }
    out << '\n';
    return out.str();
}

inline std::string manifest(const ExperimentConfig &cfg, const std::string &command,
                            const std::vector<std::string> &extra) {
    std::ostringstream out;
    out << "# shadowqsd manifest v1\n";
    out << "# command: " << command << '\n';
    out << "# version: " << kVersion << '\n';
    out << "# eigen: " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION
        << '\n';
#if defined(__VERSION__)
    out << "# compiler: " << __VERSION__ << '\n';
#endif
    for (const auto &line : extra) {
        out << "# " << line << '\n';
    }
    out << format_config(cfg);
    return out.str();
}

} // namespace detail

/// Runs the study named in the config and writes the artifacts.
inline void run_study(const ExperimentConfig &cfg, std::ostream &log) {
    const auto h = load_model(cfg);
    const auto dir = detail::prepare_output(cfg);
    std::vector<std::string> meta{"model_dim_physical: " + std::to_string(h.dim_physical),
                                  "model_qubits: " + std::to_string(h.n_qubits)};
    const std::string name = study_name(cfg.study);
    std::ostringstream results;
    std::ostringstream fits;
    fits << "study,quantity,slope,intercept,stderr,points\n";
    if (cfg.study == Study::Bias) {
        const auto res = run_bias_variance_study(h, cfg);
        results << "study,pattern,M,mean_deviation,stderr_deviation,variance,runs\n";
        for (const auto &r : res.rows) {
            detail::num(results) << name << ',' << pattern_name(r.pattern) << ',' << r.shots << ','
                                 << r.mean_deviation << ',' << r.stderr_deviation << ',' << r.variance << ','
                                 << r.runs << '\n';
        }
        fits << detail::fit_row(name, "bias_vs_M", res.bias_fit, cfg.shots.size());
        fits << detail::fit_row(name, "variance_vs_M", res.variance_fit, cfg.shots.size());
        for (const auto &w : res.warnings) {
            log << "warning: " << w << '\n';
            meta.push_back("warning: " + w);
        }
        if (res.bias_fit) {
            log << "bias slope vs M: " << res.bias_fit->slope << " +- " << res.bias_fit->stderr_slope << '\n';
        }
    } else {
        const auto res = cfg.study == Study::Shots ? run_shots_scaling(h, cfg) : run_subspace_scaling(h, cfg);
        const std::string mnes = res.mnes ? std::to_string(*res.mnes) : "none";
        results << "study,x,median_epsilon,q25_epsilon,q75_epsilon,mean_epsilon,std_epsilon,runs,mnes\n";
        for (const auto &r : res.rows) {
            detail::num(results) << name << ',' << r.x << ',' << r.epsilon.median << ',' << r.epsilon.q25 << ','
                                 << r.epsilon.q75 << ',' << r.epsilon.mean << ',' << r.epsilon.stddev << ','
                                 << r.runs << ',' << mnes << '\n';
        }
        std::ostringstream runs;
        runs << "study,x,repeat,seed,E_s,E0,epsilon,kept_rank\n";
        double margin = std::numeric_limits<double>::infinity();
        for (const auto &r : res.runs) {
            detail::num(runs) << name << ',' << r.x << ',' << r.repeat << ',' << r.seed << ',' << r.energy << ','
                              << r.exact_energy << ',' << r.epsilon << ',' << r.kept_rank << '\n';
            margin = std::min(margin, r.energy - r.exact_energy);
        }
        detail::write_file(dir / "runs.csv", runs.str());
        fits << detail::fit_row(name, cfg.study == Study::Shots ? "log_inv_eps_vs_log_N" : "log_inv_eps_vs_m",
                                res.fit, res.rows.size());
        std::ostringstream audit;
        detail::num(audit) << "lower_bound_violations: " << res.lower_bound_violations()
                           << " (min E_s - E0 = " << margin << ")";
        meta.push_back("mnes: " + mnes);
        meta.push_back((cfg.study == Study::Shots ? "fixed_m: " : "fixed_shots: ") + std::to_string(res.fixed));
        meta.push_back(audit.str());
        for (const auto &w : res.warnings) {
            log << "warning: " << w << '\n';
            meta.push_back("warning: " + w);
        }
        log << audit.str() << '\n';
        if (res.fit) {
            log << "fitted slope: " << res.fit->slope << " +- " << res.fit->stderr_slope << '\n';
        } else {
            log << "fitted slope: undefined (fewer than two points)\n";
        }
    }
    detail::write_file(dir / "results.csv", results.str());
    detail::write_file(dir / "fit.csv", fits.str());
    detail::write_file(dir / "manifest.txt", detail::manifest(cfg, "run", meta));
    log << "wrote " << (dir / "results.csv").string() << '\n';
}

/// Prints the MNES and the captured ground weight per evolved state; writes mnes.csv.
inline void run_mnes(const ExperimentConfig &cfg, std::ostream &log) {
    const auto h = load_model(cfg);
    const auto res = subspace::compute_mnes(h, initial_state(h, cfg), cfg.dt, cfg.mnes_tol);
    const auto dir = detail::prepare_output(cfg);
    std::ostringstream csv;
    csv << "m,captured\n";
    for (std::size_t j = 0; j < res.captured.size(); ++j) {
        detail::num(csv) << j + 1 << ',' << res.captured[j] << '\n';
    }
    detail::write_file(dir / "mnes.csv", csv.str());
    const std::string mnes = res.mnes ? std::to_string(*res.mnes) : "none";
    std::ostringstream ov;
    detail::num(ov) << "ground_overlap: " << res.ground_overlap;
    detail::write_file(dir / "manifest.txt", detail::manifest(cfg, "mnes", {"mnes: " + mnes, ov.str()}));
    log << "MNES = " << mnes << " (|<ground|initial>|^2 = " << res.ground_overlap << ")\n";
}

/// Exact ground energy of the configured model; writes exact.csv.
inline void run_exact(const ExperimentConfig &cfg, std::ostream &log) {
    const auto h = load_model(cfg);
    const auto g = subspace::exact_ground_energy(h);
    const auto dir = detail::prepare_output(cfg);
    std::ostringstream csv;
    csv << "E0,dim_physical,n_qubits,pad_energy\n";
    detail::num(csv) << g.energy << ',' << h.dim_physical << ',' << h.n_qubits << ',' << h.pad_energy << '\n';
    detail::write_file(dir / "exact.csv", csv.str());
    detail::write_file(dir / "manifest.txt", detail::manifest(cfg, "exact", {}));
    std::ostringstream line;
    detail::num(line) << "E0 = " << g.energy << " MeV (dimension " << h.dim_physical << ", " << h.n_qubits
                      << " qubits)\n";
    log << line.str();
}

/**
 * Loads `path` and runs `command` (run, mnes or exact). Errors are reported
 * on `err`; the return value is the process exit status.
 */
inline int run_config(const std::string &command, const std::filesystem::path &path, std::ostream &log,
                      std::ostream &err) {
    try {
        const auto cfg = load_config(path);
        if (command == "run") {
            run_study(cfg, log);
        } else if (command == "mnes") {
            run_mnes(cfg, log);
        } else if (command == "exact") {
            run_exact(cfg, log);
        } else {
            throw ConfigError("unknown command '" + command + "' (run, mnes, exact)");
        }
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
    } catch (const IoError &e) {
        err << "i/o error: " << e.what() << '\n';
    } catch (const ParseError &e) {
        err << "interaction file error: " << e.what() << '\n';
    } catch (const ReferenceError &e) {
        err << "interaction file error: " << e.what() << '\n';
    } catch (const ValidationError &e) {
        err << "interaction file error: " << e.what() << '\n';
    } catch (const DomainError &e) {
        err << "invalid setting: " << e.what() << '\n';
    } catch (const std::exception &e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitConfig;
}

inline int run_config(const std::filesystem::path &path) {
    return run_config("run", path, std::cout, std::cerr);
}

} // namespace shadowqsd::experiment
