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
 * Splittable, platform-independent random streams.
 *
 * Every random draw in the library comes from a `RandomStream` addressed by a
 * `StreamKey` (master seed plus up to three integer coordinates). Streams with
 * different keys are statistically independent and a given key reproduces the
 * same sequence on every platform, which is what makes parallel snapshot
 * generation replayable. Standard-library distributions are avoided because
 * their output is implementation defined.
 */

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace shadowqsd {

/// SplitMix64 finalizer; also used to derive sub-seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

/// Hierarchical address of a random stream.
struct StreamKey {
    std::uint64_t seed = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;

    [[nodiscard]] constexpr std::uint64_t digest() const noexcept {
        std::uint64_t h = splitmix64(seed);
        h = splitmix64(h ^ a);
        h = splitmix64(h ^ (b + 0x632BE59BD9B4E019ULL));
        h = splitmix64(h ^ (c + 0x2545F4914F6CDD1DULL));
        return h;
    }

    /// Child key used as the master seed of a nested computation.
    [[nodiscard]] constexpr std::uint64_t derive_seed() const noexcept {
        return digest();
    }

    friend constexpr bool operator==(const StreamKey &, const StreamKey &) = default;
};

/// xoshiro256** generator seeded from a `StreamKey`.
class RandomStream {
  public:
    using result_type = std::uint64_t;

    explicit RandomStream(const StreamKey &key) noexcept {
        std::uint64_t s = key.digest();
        for (auto &word : state_) {
            s = splitmix64(s);
            word = s;
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return next(); }

    std::uint64_t next() noexcept {
        const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17U;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = std::rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next() >> 11U) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) by rejection; `bound` must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x = next();
        while (x >= limit) {
            x = next();
        }
        return x % bound;
    }

    bool bit() noexcept { return (next() >> 63U) != 0; }

    /// Standard normal deviate (Box-Muller, cosine branch only).
    double normal() noexcept {
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

  private:
    std::array<std::uint64_t, 4> state_{};
};

} // namespace shadowqsd
