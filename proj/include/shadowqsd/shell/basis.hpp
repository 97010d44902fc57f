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
 * Slater-determinant basis for a fixed number of valence protons and neutrons.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "shadowqsd/common.hpp"
#include "shadowqsd/shell/interaction.hpp"

namespace shadowqsd::shell {

inline constexpr int kMaxOrbitals = 64;

/**
 * Occupation state a+_{k1} a+_{k2} ... a+_{kp} |vacuum> with k1 > k2 > ... > kp.
 * The bitmask mirrors the occupation list.
 */
class SlaterDeterminant {
  public:
    SlaterDeterminant() = default;

    explicit SlaterDeterminant(std::vector<int> occupied) : occupied_(std::move(occupied)) {
        for (std::size_t k = 0; k < occupied_.size(); ++k) {
            const int orb = occupied_[k];
            if (orb < 0 || orb >= kMaxOrbitals) {
                throw DomainError("orbital index out of range in determinant");
            }
            if (k > 0 && occupied_[k - 1] <= orb) {
                throw ContractError("determinant occupation must be strictly descending");
            }
            mask_ |= std::uint64_t{1} << orb;
        }
    }

    static SlaterDeterminant from_mask(std::uint64_t mask) {
        std::vector<int> occ;
        for (int orb = kMaxOrbitals - 1; orb >= 0; --orb) {
            if ((mask >> orb) & 1U) {
                occ.push_back(orb);
            }
        }
        return SlaterDeterminant(std::move(occ));
    }

    [[nodiscard]] const std::vector<int> &occupied() const noexcept { return occupied_; }
    [[nodiscard]] std::uint64_t mask() const noexcept { return mask_; }
    [[nodiscard]] std::size_t particles() const noexcept { return occupied_.size(); }

    friend bool operator==(const SlaterDeterminant &x, const SlaterDeterminant &y) {
        return x.occupied_ == y.occupied_;
    }
    /// Lexicographic on the descending occupation lists.
    friend bool operator<(const SlaterDeterminant &x, const SlaterDeterminant &y) {
        return x.occupied_ < y.occupied_;
    }

  private:
    std::vector<int> occupied_;
    std::uint64_t mask_ = 0;
};

/// Ordered determinant list with O(1) lookup by occupation mask.
class Basis {
  public:
    Basis() = default;
    explicit Basis(std::vector<SlaterDeterminant> dets) : dets_(std::move(dets)) {
        for (std::size_t k = 0; k < dets_.size(); ++k) {
            if (!lookup_.emplace(dets_[k].mask(), k).second) {
                throw ValidationError("basis contains a repeated determinant");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return dets_.size(); }
    [[nodiscard]] bool empty() const noexcept { return dets_.empty(); }
    [[nodiscard]] const SlaterDeterminant &operator[](std::size_t k) const { return dets_[k]; }
    [[nodiscard]] const std::vector<SlaterDeterminant> &determinants() const noexcept {
        return dets_;
    }
    [[nodiscard]] auto begin() const noexcept { return dets_.begin(); }
    [[nodiscard]] auto end() const noexcept { return dets_.end(); }

    [[nodiscard]] std::optional<std::size_t> index_of(std::uint64_t mask) const {
        const auto it = lookup_.find(mask);
        if (it == lookup_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

  private:
    std::vector<SlaterDeterminant> dets_;
    std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

namespace detail {

inline void for_each_combination(std::span<const int> pool, int count,
                                  const std::function<void(std::uint64_t)> &visit) {
    const int n = static_cast<int>(pool.size());
    std::function<void(int, int, std::uint64_t)> rec = [&](int start, int depth,
                                                           std::uint64_t mask) {
        if (depth == count) {
            visit(mask);
            return;
        }
        for (int k = start; k <= n - (count - depth); ++k) {
            rec(k + 1, depth + 1, mask | (std::uint64_t{1} << pool[k]));
        }
    };
    rec(0, 0, 0);
}

} // namespace detail

/// Sum of 2m over occupied orbitals.
[[nodiscard]] inline int total_twice_m(const SlaterDeterminant &det, const InteractionData &data) {
    int sum = 0;
    for (const int orb : det.occupied()) {
        sum += data.orbitals.at(static_cast<std::size_t>(orb)).twice_m;
    }
    return sum;
}

/**
 * @brief All determinants with the requested proton and neutron numbers.
 *
 * Output is sorted lexicographically on the descending occupation lists. With
 * `twice_jz` set, only determinants whose 2M equals it are kept.
 */
inline Basis enumerate_basis(const InteractionData &data, int n_protons, int n_neutrons,
                             std::optional<int> twice_jz = std::nullopt) {
    if (data.orbitals.size() > static_cast<std::size_t>(kMaxOrbitals)) {
        throw DomainError("more than 64 single-particle orbitals are not supported");
    }
    std::vector<int> protons;
    std::vector<int> neutrons;
    for (const auto &o : data.orbitals) {
        (o.twice_tz == kProton ? protons : neutrons).push_back(o.index);
    }
    if (n_protons < 0 || n_neutrons < 0 || n_protons > static_cast<int>(protons.size()) ||
        n_neutrons > static_cast<int>(neutrons.size())) {
        throw DomainError("particle numbers (" + std::to_string(n_protons) + "p, " +
                          std::to_string(n_neutrons) + "n) do not fit the available orbitals (" +
                          std::to_string(protons.size()) + "p, " +
                          std::to_string(neutrons.size()) + "n)");
    }
    std::vector<std::uint64_t> proton_masks;
    std::vector<std::uint64_t> neutron_masks;
    detail::for_each_combination(protons, n_protons,
                                 [&](std::uint64_t m) { proton_masks.push_back(m); });
    detail::for_each_combination(neutrons, n_neutrons,
                                 [&](std::uint64_t m) { neutron_masks.push_back(m); });

    std::vector<SlaterDeterminant> dets;
    for (const auto pm : proton_masks) {
        for (const auto nm : neutron_masks) {
            auto det = SlaterDeterminant::from_mask(pm | nm);
            if (twice_jz && total_twice_m(det, data) != *twice_jz) {
                continue;
            }
            dets.push_back(std::move(det));
        }
    }
    std::sort(dets.begin(), dets.end());
    return Basis(std::move(dets));
}

/// Debug dump: `index,occupied_orbitals` with the orbitals space separated.
inline void write_basis_csv(std::ostream &out, const Basis &basis) {
    out << "index,occupied_orbitals\n";
    for (std::size_t k = 0; k < basis.size(); ++k) {
        out << k << ',';
        const auto &occ = basis[k].occupied();
        for (std::size_t p = 0; p < occ.size(); ++p) {
            out << (p ? " " : "") << occ[p];
        }
        out << '\n';
    }
}

} // namespace shadowqsd::shell
