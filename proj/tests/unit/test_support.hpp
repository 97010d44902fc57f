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

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "shadowqsd/random.hpp"
#include "shadowqsd/shell/interaction.hpp"

namespace testing_support {

inline std::string fixture(const std::string &name) {
    return std::string(SHADOWQSD_FIXTURE_DIR) + "/" + name;
}

struct ShellSpec {
    std::string label;
    int twice_j;
    char parity;
    int twice_tz;
};

/// Random coupled interaction over the given shells, every allowed (J,T).
inline std::string random_interaction_text(const std::vector<ShellSpec> &shells,
                                           std::uint64_t seed) {
    shadowqsd::RandomStream rng({seed, 0xF0C, 0, 0});
    std::ostringstream out;
    out.precision(17);
    std::vector<std::pair<std::string, int>> orbits;
    for (const auto &s : shells) {
        out << "SHELL " << s.label << ' ' << s.twice_j << ' ' << s.parity << ' ' << s.twice_tz
            << '\n';
        bool seen = false;
        for (const auto &o : orbits) {
            seen = seen || o.first == s.label;
        }
        if (!seen) {
            orbits.emplace_back(s.label, s.twice_j);
        }
    }
    for (const auto &o : orbits) {
        out << "SPE " << o.first << ' ' << (4.0 * rng.uniform() - 2.0) << '\n';
    }
    const int n = static_cast<int>(orbits.size());
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int d = c; d < n; ++d) {
                    if (std::make_pair(a, b) > std::make_pair(c, d)) {
                        continue;
                    }
                    for (int twice_J = 0; twice_J <= 12; twice_J += 2) {
                        if (!shadowqsd::shell::triangle(orbits[a].second, orbits[b].second, twice_J) ||
                            !shadowqsd::shell::triangle(orbits[c].second, orbits[d].second, twice_J)) {
                            continue;
                        }
                        for (int twice_T : {0, 2}) {
                            out << "TBME " << orbits[a].first << ' ' << orbits[b].first << ' '
                                << orbits[c].first << ' ' << orbits[d].first << ' ' << twice_J
                                << ' ' << twice_T << ' ' << (6.0 * rng.uniform() - 3.0) << '\n';
                        }
                    }
                }
            }
        }
    }
    return out.str();
}

} // namespace testing_support
