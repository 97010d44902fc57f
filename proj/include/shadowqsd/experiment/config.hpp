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
 * Key-value experiment configuration.
 *
 * One `key = value` pair per line; `#` starts a comment. Lists are comma
 * separated and integer lists also accept `a..b` ranges. Unknown keys are
 * errors so typos never pass silently.
 */

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shadowqsd/common.hpp"

namespace shadowqsd::experiment {

/// Invalid or inconsistent configuration (CLI exit status 2).
class ConfigError : public Error {
  public:
    using Error::Error;
};

enum class Study { Shots, Subspace, Bias };

struct ExperimentConfig {
    Study study = Study::Shots;
    std::string model = "toy_he6"; ///< toy_he6 | toy_pairing | file
    std::uint64_t toy_seed = 7;
    std::string interaction;       ///< path, for model = file
    int protons = 0;
    int neutrons = 2;
    std::optional<int> twice_jz = 0;
    double dt = 1.0;
    std::optional<std::size_t> m; ///< empty: use the MNES
    std::vector<std::size_t> m_values;
    std::vector<std::size_t> shots{1000, 10000};
    std::size_t repeats = 5;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    double mnes_tol = 1e-6;
    std::size_t initial_index = 0; ///< basis state used as the initial register
    std::string output = "shadowqsd_out";
    /// Directory of the config file; relative paths resolve against it.
    std::filesystem::path base_dir;

    [[nodiscard]] std::filesystem::path resolve(const std::string &p) const {
        const std::filesystem::path path(p);
        return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
    }
};

[[nodiscard]] inline std::string study_name(Study s) {
    switch (s) {
    case Study::Shots:
        return "shots";
    case Study::Subspace:
        return "subspace";
    case Study::Bias:
        return "bias";
    }
    return "?";
}

namespace detail {

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

inline double to_double(const std::string &key, const std::string &v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception &) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(x)) {
        throw ConfigError(key + ": expected a finite number, got '" + v + "'");
    }
    return x;
}

/// Non-negative integer; scientific notation such as 1e4 is accepted.
inline std::uint64_t to_count(const std::string &key, const std::string &v) {
    const double x = to_double(key, v);
    if (x < 0 || x != std::floor(x) || x > 1.8e19) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
    }
    return static_cast<std::uint64_t>(x);
}

inline std::vector<std::size_t> to_count_list(const std::string &key, const std::string &v) {
    std::vector<std::size_t> out;
    for (const auto &item : split(v, ',')) {
        const auto dots = item.find("..");
        if (dots != std::string::npos) {
            const auto lo = to_count(key, trim(item.substr(0, dots)));
            const auto hi = to_count(key, trim(item.substr(dots + 2)));
            if (hi < lo) {
                throw ConfigError(key + ": empty range '" + item + "'");
            }
            for (auto k = lo; k <= hi; ++k) {
                out.push_back(static_cast<std::size_t>(k));
            }
        } else {
            out.push_back(static_cast<std::size_t>(to_count(key, item)));
        }
    }
    if (out.empty()) {
        throw ConfigError(key + ": list must not be empty");
    }
    for (std::size_t k = 1; k < out.size(); ++k) {
        if (out[k] <= out[k - 1]) {
            throw ConfigError(key + ": values must be strictly increasing");
        }
    }
    return out;
}

} // namespace detail

[[nodiscard]] inline ExperimentConfig parse_config(std::istream &in,
                                                   const std::filesystem::path &base_dir = {}) {
    ExperimentConfig cfg;
    cfg.base_dir = base_dir;
    std::map<std::string, std::size_t> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": '" + key + "' has no value");
        }
        if (!seen.emplace(key, line_no).second) {
            throw ConfigError("line " + std::to_string(line_no) + ": '" + key + "' repeats line " +
                              std::to_string(seen[key]));
        }
        try {
            if (key == "study") {
                if (value == "shots") {
                    cfg.study = Study::Shots;
                } else if (value == "subspace") {
                    cfg.study = Study::Subspace;
                } else if (value == "bias") {
                    cfg.study = Study::Bias;
                } else {
                    throw ConfigError("study: unknown study '" + value + "' (shots, subspace, bias)");
                }
            } else if (key == "model") {
                if (value != "toy_he6" && value != "toy_pairing" && value != "file") {
                    throw ConfigError("model: unknown model '" + value + "' (toy_he6, toy_pairing, file)");
                }
                cfg.model = value;
            } else if (key == "toy_seed") {
                cfg.toy_seed = detail::to_count(key, value);
            } else if (key == "interaction") {
                cfg.interaction = value;
            } else if (key == "protons") {
                cfg.protons = static_cast<int>(detail::to_count(key, value));
            } else if (key == "neutrons") {
                cfg.neutrons = static_cast<int>(detail::to_count(key, value));
            } else if (key == "jz") {
                if (value == "none") {
                    cfg.twice_jz.reset();
                } else {
                    const double x = detail::to_double(key, value);
                    if (x != std::floor(x)) {
                        throw ConfigError("jz: expected an integer (twice the projection) or 'none'");
                    }
                    cfg.twice_jz = static_cast<int>(x);
                }
            } else if (key == "dt") {
                cfg.dt = detail::to_double(key, value);
            } else if (key == "m") {
                if (value == "auto") {
                    cfg.m.reset();
                } else {
                    cfg.m = static_cast<std::size_t>(detail::to_count(key, value));
                }
            } else if (key == "m_values") {
                cfg.m_values = detail::to_count_list(key, value);
            } else if (key == "shots") {
                cfg.shots = detail::to_count_list(key, value);
            } else if (key == "repeats") {
                cfg.repeats = static_cast<std::size_t>(detail::to_count(key, value));
            } else if (key == "seed") {
                cfg.seed = detail::to_count(key, value);
            } else if (key == "threads") {
                cfg.threads = static_cast<std::size_t>(detail::to_count(key, value));
            } else if (key == "mnes_tol") {
                cfg.mnes_tol = detail::to_double(key, value);
            } else if (key == "initial") {
                cfg.initial_index = static_cast<std::size_t>(detail::to_count(key, value));
            } else if (key == "output") {
                cfg.output = value;
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError &e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (cfg.repeats == 0) {
        throw ConfigError("repeats must be at least 1");
    }
    if (!(cfg.dt > 0.0)) {
        throw ConfigError("dt must be positive");
    }
    if (!(cfg.mnes_tol > 0.0 && cfg.mnes_tol < 1.0)) {
        throw ConfigError("mnes_tol must lie in (0, 1)");
    }
    if (cfg.m && *cfg.m == 0) {
        throw ConfigError("m must be at least 1");
    }
    if (!cfg.m_values.empty() && cfg.m_values.front() == 0) {
        throw ConfigError("m_values must be positive");
    }
    if (cfg.shots.front() == 0) {
        throw ConfigError("shots must be positive");
    }
    if (cfg.model == "file" && cfg.interaction.empty()) {
        throw ConfigError("model = file needs an 'interaction' path");
    }
    return cfg;
}

[[nodiscard]] inline ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path.string() + "'");
    }
    return parse_config(in, path.parent_path());
}

/// Canonical echo of every setting; parsing it back gives the same config.
[[nodiscard]] inline std::string format_config(const ExperimentConfig &cfg) {
    std::ostringstream out;
    auto real = [](double x) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, res.ptr);
    };
    auto list = [](const std::vector<std::size_t> &v) {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k) {
            s += (k ? ", " : "") + std::to_string(v[k]);
        }
        return s;
    };
    out << "study = " << study_name(cfg.study) << '\n';
    out << "model = " << cfg.model << '\n';
    out << "toy_seed = " << cfg.toy_seed << '\n';
    if (!cfg.interaction.empty()) {
        out << "interaction = " << cfg.resolve(cfg.interaction).string() << '\n';
    }
    out << "protons = " << cfg.protons << '\n';
    out << "neutrons = " << cfg.neutrons << '\n';
    out << "jz = " << (cfg.twice_jz ? std::to_string(*cfg.twice_jz) : "none") << '\n';
    out << "dt = " << real(cfg.dt) << '\n';
    out << "m = " << (cfg.m ? std::to_string(*cfg.m) : "auto") << '\n';
    if (!cfg.m_values.empty()) {
        out << "m_values = " << list(cfg.m_values) << '\n';
    }
    out << "shots = " << list(cfg.shots) << '\n';
    out << "repeats = " << cfg.repeats << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "threads = " << cfg.threads << '\n';
    out << "mnes_tol = " << real(cfg.mnes_tol) << '\n';
    out << "initial = " << cfg.initial_index << '\n';
    out << "output = " << cfg.output << '\n';
    return out.str();
}

} // namespace shadowqsd::experiment
