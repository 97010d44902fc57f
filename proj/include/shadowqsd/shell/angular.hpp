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
 * Clebsch-Gordan coefficients from the Racah closed-form sum.
 *
 * All angular momenta are passed doubled ("twice_j") so half-integer values
 * stay integral. Factorials enter as logarithms from a precomputed table,
 * which is accurate to ~1e-14 relative for 2j up to 40.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "shadowqsd/common.hpp"

namespace shadowqsd::shell {

namespace detail {

inline constexpr int kLogFactorialTableSize = 192;

inline const std::array<double, kLogFactorialTableSize> &log_factorial_table() {
    static const auto table = [] {
        std::array<double, kLogFactorialTableSize> t{};
        t[0] = 0.0;
        for (int k = 1; k < kLogFactorialTableSize; ++k) {
            t[k] = t[k - 1] + std::log(static_cast<double>(k));
        }
        return t;
    }();
    return table;
}

inline double log_factorial(int n) {
    if (n < 0 || n >= kLogFactorialTableSize) {
        throw DomainError("log_factorial argument out of table range: " + std::to_string(n));
    }
    return log_factorial_table()[n];
}

inline void check_pair(int twice_j, int twice_m, const char *which) {
    if (twice_j < 0) {
        throw ContractError(std::string("negative angular momentum for ") + which);
    }
    if (std::abs(twice_m) > twice_j) {
        throw ContractError(std::string("|m| exceeds j for ") + which);
    }
    if ((twice_j - twice_m) % 2 != 0) {
        throw ContractError(std::string("2j and 2m parity mismatch for ") + which);
    }
}

} // namespace detail

/// True when |j1 - j2| <= J <= j1 + j2 and j1 + j2 + J is an integer.
[[nodiscard]] inline bool triangle(int twice_j1, int twice_j2, int twice_J) {
    return twice_J >= std::abs(twice_j1 - twice_j2) && twice_J <= twice_j1 + twice_j2 &&
           (twice_j1 + twice_j2 + twice_J) % 2 == 0;
}

/**
 * @brief Condon-Shortley coefficient <j1 m1, j2 m2 | J M>.
 *
 * Returns 0 when M != m1 + m2 or the triangle rule fails. Throws
 * `ContractError` when any (2j, 2m) pair has mismatched parity or |m| > j.
 */
[[nodiscard]] inline double clebsch_gordan(int twice_j1, int twice_m1, int twice_j2,
                                           int twice_m2, int twice_J, int twice_M) {
    detail::check_pair(twice_j1, twice_m1, "j1");
    detail::check_pair(twice_j2, twice_m2, "j2");
    detail::check_pair(twice_J, twice_M, "J");
    if (twice_M != twice_m1 + twice_m2 || !triangle(twice_j1, twice_j2, twice_J)) {
        return 0.0;
    }

    using detail::log_factorial;
    // Integer factorial arguments (halved twice-values).
    const int j1_plus_j2_minus_J = (twice_j1 + twice_j2 - twice_J) / 2;
    const int J_plus_j1_minus_j2 = (twice_J + twice_j1 - twice_j2) / 2;
    const int J_minus_j1_plus_j2 = (twice_J - twice_j1 + twice_j2) / 2;
    const int sum_plus_one = (twice_j1 + twice_j2 + twice_J) / 2 + 1;
    const int j1_minus_m1 = (twice_j1 - twice_m1) / 2;
    const int j1_plus_m1 = (twice_j1 + twice_m1) / 2;
    const int j2_minus_m2 = (twice_j2 - twice_m2) / 2;
    const int j2_plus_m2 = (twice_j2 + twice_m2) / 2;
    const int J_minus_M = (twice_J - twice_M) / 2;
    const int J_plus_M = (twice_J + twice_M) / 2;

    const double log_prefactor =
        0.5 * (std::log(static_cast<double>(twice_J + 1)) + log_factorial(J_plus_j1_minus_j2) +
               log_factorial(J_minus_j1_plus_j2) + log_factorial(j1_plus_j2_minus_J) -
               log_factorial(sum_plus_one) + log_factorial(J_plus_M) + log_factorial(J_minus_M) +
               log_factorial(j1_minus_m1) + log_factorial(j1_plus_m1) +
               log_factorial(j2_minus_m2) + log_factorial(j2_plus_m2));

    // Summation bounds keep every factorial argument non-negative.
    const int a = (twice_J - twice_j2 + twice_m1) / 2;
    const int b = (twice_J - twice_j1 - twice_m2) / 2;
    const int k_min = std::max({0, -a, -b});
    const int k_max = std::min({j1_plus_j2_minus_J, j1_minus_m1, j2_plus_m2});

    double sum = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double log_den = log_factorial(k) + log_factorial(j1_plus_j2_minus_J - k) +
                               log_factorial(j1_minus_m1 - k) + log_factorial(j2_plus_m2 - k) +
                               log_factorial(a + k) + log_factorial(b + k);
        const double term = std::exp(log_prefactor - log_den);
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

} // namespace shadowqsd::shell
