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

// Test-only Clebsch-Gordan table built by constructing coupled states with the
// lowering operator and Gram-Schmidt, i.e. without any closed-form sum.

#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <tuple>
#include <vector>

namespace oracle {

class CouplingTable {
  public:
    CouplingTable(int twice_j1, int twice_j2) : j1_(twice_j1), j2_(twice_j2) {
        const int n1 = j1_ + 1;
        const int n2 = j2_ + 1;
        dim_ = n1 * n2;
        std::vector<std::vector<double>> built; // all coupled states so far
        for (int twice_J = j1_ + j2_; twice_J >= std::abs(j1_ - j2_); twice_J -= 2) {
            // Highest-weight state: M = J subspace orthogonal to earlier states.
            std::vector<double> top(dim_, 0.0);
            std::vector<int> slots;
            for (int m1 = -j1_; m1 <= j1_; m1 += 2) {
                const int m2 = twice_J - m1;
                if (std::abs(m2) <= j2_) {
                    slots.push_back(index(m1, m2));
                }
            }
            // Start from the m1 = j1 component and orthogonalize.
            bool done = false;
            for (const int s : slots) {
                std::vector<double> v(dim_, 0.0);
                v[s] = 1.0;
                for (const auto &b : built) {
                    double ov = 0.0;
                    for (int k = 0; k < dim_; ++k) {
                        ov += b[k] * v[k];
                    }
                    for (int k = 0; k < dim_; ++k) {
                        v[k] -= ov * b[k];
                    }
                }
                double nrm = 0.0;
                for (const double x : v) {
                    nrm += x * x;
                }
                if (nrm > 1e-20) {
                    for (auto &x : v) {
                        x /= std::sqrt(nrm);
                    }
                    top = v;
                    done = true;
                    break;
                }
            }
            if (!done) {
                continue;
            }
            // Condon-Shortley: coefficient with m1 = j1 is positive.
            const int pin = index(j1_, twice_J - j1_);
            double pin_value = 0.0;
            if (std::abs(twice_J - j1_) <= j2_) {
                pin_value = top[pin];
            }
            if (pin_value < 0) {
                for (auto &x : top) {
                    x = -x;
                }
            }
            std::vector<double> state = top;
            for (int twice_M = twice_J; twice_M >= -twice_J; twice_M -= 2) {
                built.push_back(state);
                for (int m1 = -j1_; m1 <= j1_; m1 += 2) {
                    const int m2 = twice_M - m1;
                    if (std::abs(m2) <= j2_) {
                        table_[{m1, m2, twice_J, twice_M}] = state[index(m1, m2)];
                    }
                }
                if (twice_M > -twice_J) {
                    state = lower(state);
                    const double J = twice_J / 2.0;
                    const double M = twice_M / 2.0;
                    const double c = std::sqrt(J * (J + 1) - M * (M - 1));
                    for (auto &x : state) {
                        x /= c;
                    }
                }
            }
        }
    }

    [[nodiscard]] double operator()(int twice_m1, int twice_m2, int twice_J, int twice_M) const {
        const auto it = table_.find({twice_m1, twice_m2, twice_J, twice_M});
        return it == table_.end() ? 0.0 : it->second;
    }

  private:
    [[nodiscard]] int index(int m1, int m2) const { return ((m1 + j1_) / 2) * (j2_ + 1) + (m2 + j2_) / 2; }

    [[nodiscard]] std::vector<double> lower(const std::vector<double> &v) const {
        std::vector<double> out(dim_, 0.0);
        for (int m1 = -j1_; m1 <= j1_; m1 += 2) {
            for (int m2 = -j2_; m2 <= j2_; m2 += 2) {
                const double amp = v[index(m1, m2)];
                if (amp == 0.0) {
                    continue;
                }
                if (m1 > -j1_) {
                    const double j = j1_ / 2.0;
                    const double m = m1 / 2.0;
                    out[index(m1 - 2, m2)] += amp * std::sqrt(j * (j + 1) - m * (m - 1));
                }
                if (m2 > -j2_) {
                    const double j = j2_ / 2.0;
                    const double m = m2 / 2.0;
                    out[index(m1, m2 - 2)] += amp * std::sqrt(j * (j + 1) - m * (m - 1));
                }
            }
        }
        return out;
    }

    int j1_;
    int j2_;
    int dim_ = 0;
    std::map<std::tuple<int, int, int, int>, double> table_;
};

} // namespace oracle
