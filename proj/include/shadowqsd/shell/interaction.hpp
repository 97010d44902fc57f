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
 * Shell-model interaction data and its plain-text file format.
 *
 * Format (UTF-8, one directive per line, `#` starts a comment):
 *
 *     SHELL <label> <2j> <parity> <tz>     # parity is + or -, tz is -1 or +1
 *     SPE   <label> <energy_MeV>
 *     TBME  <a> <b> <c> <d> <2J> <2T> <V_MeV>
 *
 * A label may be declared once per isospin species; both declarations must
 * agree on 2j and parity. Isospin convention: tz = -1 is a proton, tz = +1 a
 * neutron. Orbits (distinct labels) are numbered in order of first
 * declaration, and TBME records must satisfy a <= b and c <= d in that
 * numbering. A record (ab;cd) with (a,b) != (c,d) implies its Hermitian
 * partner (cd;ab); listing both is rejected as a duplicate. SPE values apply
 * to every species declared under the label; a label without SPE has 0 MeV.
 *
 * Orbitals (m-substates) are generated shell by shell in declaration order,
 * m ascending from -j to +j, and numbered 0..K-1.
 */

#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "shadowqsd/common.hpp"
#include "shadowqsd/shell/angular.hpp"

namespace shadowqsd::shell {

inline constexpr int kProton = -1;
inline constexpr int kNeutron = +1;

/// One single-particle m-substate.
struct Orbital {
    int index = 0;
    int twice_j = 0;
    int twice_m = 0;
    int twice_tz = kNeutron;
    std::string shell_label;
    int orbit = 0; ///< spatial orbit id (label index)
};

/// A declared (label, species) shell.
struct Shell {
    std::string label;
    int twice_j = 0;
    int parity = +1;
    int twice_tz = kNeutron;
    int orbit = 0;
};

/// Coupled two-body matrix element V_JT(ab;cd) in MeV.
struct TbmeRecord {
    int a = 0;
    int b = 0;
    int c = 0;
    int d = 0;
    int twice_J = 0;
    int twice_T = 0;
    double value = 0.0;
};

/// A spatial orbit: what TBME and SPE lines refer to.
struct Orbit {
    std::string label;
    int twice_j = 0;
    int parity = +1;
};

struct InteractionData {
    std::vector<Orbit> orbits;
    std::vector<Shell> shells;
    std::vector<Orbital> orbitals;
    std::map<int, double> spe; ///< orbit id -> single-particle energy
    std::vector<TbmeRecord> tbme;

    [[nodiscard]] double single_particle_energy(int orbit) const {
        const auto it = spe.find(orbit);
        return it == spe.end() ? 0.0 : it->second;
    }

    [[nodiscard]] int orbit_id(const std::string &label) const {
        for (std::size_t k = 0; k < orbits.size(); ++k) {
            if (orbits[k].label == label) {
                return static_cast<int>(k);
            }
        }
        throw ReferenceError("undeclared shell '" + label + "'");
    }

    /// Orbital index of (orbit, m, species), or -1 when that species is absent.
    [[nodiscard]] int find_orbital(int orbit, int twice_m, int twice_tz) const {
        for (const auto &o : orbitals) {
            if (o.orbit == orbit && o.twice_m == twice_m && o.twice_tz == twice_tz) {
                return o.index;
            }
        }
        return -1;
    }
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string &line) {
    std::vector<std::string> out;
    std::istringstream in(line.substr(0, line.find('#')));
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

inline int parse_int(const std::string &tok, std::size_t line, const char *field) {
    char *end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') {
        throw ParseError(line, std::string("expected integer for ") + field + ", got '" + tok + "'");
    }
    return static_cast<int>(v);
}

inline double parse_double(const std::string &tok, std::size_t line, const char *field) {
    char *end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw ParseError(line, std::string("expected number for ") + field + ", got '" + tok + "'");
    }
    return v;
}

inline int parse_parity(const std::string &tok, std::size_t line) {
    if (tok == "+" || tok == "+1" || tok == "1") {
        return +1;
    }
    if (tok == "-" || tok == "-1") {
        return -1;
    }
    throw ParseError(line, "parity must be + or -, got '" + tok + "'");
}

inline void generate_orbitals(InteractionData &data) {
    data.orbitals.clear();
    int index = 0;
    for (const auto &shell : data.shells) {
        for (int twice_m = -shell.twice_j; twice_m <= shell.twice_j; twice_m += 2) {
            data.orbitals.push_back(
                Orbital{index++, shell.twice_j, twice_m, shell.twice_tz, shell.label, shell.orbit});
        }
    }
}

} // namespace detail

/// Checks every InteractionData invariant; throws on the first violation.
inline void validate(const InteractionData &data) {
    for (std::size_t k = 0; k < data.orbitals.size(); ++k) {
        const auto &o = data.orbitals[k];
        if (o.index != static_cast<int>(k)) {
            throw ValidationError("orbital indices must be 0..K-1 without gaps");
        }
        if (o.twice_j < 0 || std::abs(o.twice_m) > o.twice_j || (o.twice_j - o.twice_m) % 2 != 0) {
            throw ValidationError("orbital " + std::to_string(k) + " has invalid (2j, 2m)");
        }
    }
    const auto n_orbits = static_cast<int>(data.orbits.size());
    for (const auto &[orbit, energy] : data.spe) {
        if (orbit < 0 || orbit >= n_orbits) {
            throw ReferenceError("SPE refers to undeclared orbit " + std::to_string(orbit));
        }
    }
    std::set<std::tuple<int, int, int, int, int, int>> seen;
    for (const auto &r : data.tbme) {
        for (const int id : {r.a, r.b, r.c, r.d}) {
            if (id < 0 || id >= n_orbits) {
                throw ReferenceError("TBME refers to undeclared orbit " + std::to_string(id));
            }
        }
        if (r.a > r.b || r.c > r.d) {
            throw ValidationError("TBME orbit ordering requires a <= b and c <= d");
        }
        const auto &oa = data.orbits[r.a];
        const auto &ob = data.orbits[r.b];
        const auto &oc = data.orbits[r.c];
        const auto &od = data.orbits[r.d];
        if (!triangle(oa.twice_j, ob.twice_j, r.twice_J) ||
            !triangle(oc.twice_j, od.twice_j, r.twice_J)) {
            throw ValidationError("TBME violates the triangle rule: 2J=" +
                                  std::to_string(r.twice_J) + " for (" + oa.label + "," +
                                  ob.label + ";" + oc.label + "," + od.label + ")");
        }
        if (r.twice_T != 0 && r.twice_T != 2) {
            throw ValidationError("TBME isospin 2T must be 0 or 2");
        }
        const auto key = std::make_tuple(r.a, r.b, r.c, r.d, r.twice_J, r.twice_T);
        const auto partner = std::make_tuple(r.c, r.d, r.a, r.b, r.twice_J, r.twice_T);
        if (seen.contains(key) || seen.contains(partner)) {
            throw ValidationError("duplicate TBME record (or its Hermitian partner)");
        }
        seen.insert(key);
    }
}

/// Parses the interaction format documented at the top of this header.
inline InteractionData parse_interaction(std::istream &in) {
    InteractionData data;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto tok = detail::tokenize(raw);
        if (tok.empty()) {
            continue;
        }
        const std::string &kw = tok[0];
        if (kw == "SHELL") {
            if (tok.size() != 5) {
                throw ParseError(line_no, "SHELL expects <label> <2j> <parity> <tz>");
            }
            Shell shell;
            shell.label = tok[1];
            shell.twice_j = detail::parse_int(tok[2], line_no, "2j");
            shell.parity = detail::parse_parity(tok[3], line_no);
            shell.twice_tz = detail::parse_int(tok[4], line_no, "tz");
            if (shell.twice_j < 0) {
                throw ValidationError("line " + std::to_string(line_no) + ": 2j must be >= 0");
            }
            if (shell.twice_tz != kProton && shell.twice_tz != kNeutron) {
                throw ParseError(line_no, "tz must be -1 (proton) or +1 (neutron)");
            }
            int orbit = -1;
            for (std::size_t k = 0; k < data.orbits.size(); ++k) {
                if (data.orbits[k].label == shell.label) {
                    orbit = static_cast<int>(k);
                }
            }
            if (orbit < 0) {
                orbit = static_cast<int>(data.orbits.size());
                data.orbits.push_back(Orbit{shell.label, shell.twice_j, shell.parity});
            } else if (data.orbits[orbit].twice_j != shell.twice_j ||
                       data.orbits[orbit].parity != shell.parity) {
                throw ValidationError("line " + std::to_string(line_no) + ": shell '" +
                                      shell.label + "' redeclared with different 2j or parity");
            }
            for (const auto &s : data.shells) {
                if (s.orbit == orbit && s.twice_tz == shell.twice_tz) {
                    throw ValidationError("line " + std::to_string(line_no) + ": shell '" +
                                          shell.label + "' declared twice for one species");
                }
            }
            shell.orbit = orbit;
            data.shells.push_back(shell);
        } else if (kw == "SPE") {
            if (tok.size() != 3) {
                throw ParseError(line_no, "SPE expects <label> <energy_MeV>");
            }
            const int orbit = data.orbit_id(tok[1]);
            if (data.spe.contains(orbit)) {
                throw ValidationError("line " + std::to_string(line_no) + ": duplicate SPE for '" +
                                      tok[1] + "'");
            }
            data.spe[orbit] = detail::parse_double(tok[2], line_no, "energy");
        } else if (kw == "TBME") {
            if (tok.size() != 8) {
                throw ParseError(line_no, "TBME expects <a> <b> <c> <d> <2J> <2T> <V_MeV>");
            }
            TbmeRecord r;
            r.a = data.orbit_id(tok[1]);
            r.b = data.orbit_id(tok[2]);
            r.c = data.orbit_id(tok[3]);
            r.d = data.orbit_id(tok[4]);
            r.twice_J = detail::parse_int(tok[5], line_no, "2J");
            r.twice_T = detail::parse_int(tok[6], line_no, "2T");
            r.value = detail::parse_double(tok[7], line_no, "V");
            data.tbme.push_back(r);
            try {
                InteractionData probe;
                probe.orbits = data.orbits;
                probe.tbme = data.tbme;
                validate(probe);
            } catch (const ValidationError &e) {
                throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
            }
        } else {
            throw ParseError(line_no, "unknown directive '" + kw + "'");
        }
    }
    detail::generate_orbitals(data);
    validate(data);
    return data;
}

inline InteractionData parse_interaction_text(const std::string &text) {
    std::istringstream in(text);
    return parse_interaction(in);
}

inline InteractionData load_interaction(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open interaction file '" + path + "'");
    }
    return parse_interaction(in);
}

/// Serializes back to the text format; parse(format(x)) reproduces x.
inline std::string format_interaction(const InteractionData &data) {
    std::ostringstream out;
    out << std::setprecision(17);
    for (const auto &s : data.shells) {
        out << "SHELL " << s.label << ' ' << s.twice_j << ' ' << (s.parity > 0 ? '+' : '-') << ' '
            << (s.twice_tz > 0 ? "+1" : "-1") << '\n';
    }
    for (const auto &[orbit, energy] : data.spe) {
        out << "SPE " << data.orbits[orbit].label << ' ' << energy << '\n';
    }
    for (const auto &r : data.tbme) {
        out << "TBME " << data.orbits[r.a].label << ' ' << data.orbits[r.b].label << ' '
            << data.orbits[r.c].label << ' ' << data.orbits[r.d].label << ' ' << r.twice_J << ' '
            << r.twice_T << ' ' << r.value << '\n';
    }
    return out.str();
}

} // namespace shadowqsd::shell
