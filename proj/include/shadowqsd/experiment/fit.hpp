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

// Ordinary least-squares line fits and order statistics for the studies.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "shadowqsd/common.hpp"

namespace shadowqsd::experiment {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0; ///< NaN with only two points
    std::size_t points = 0;
};

/// y = slope * x + intercept by OLS.
[[nodiscard]] inline LineFit fit_line(const std::vector<double> &xs, const std::vector<double> &ys) {
    if (xs.size() != ys.size()) {
        throw DomainError("fit_line: x and y lengths differ");
    }
    if (xs.size() < 2) {
        throw DomainError("fit_line: need at least two points");
    }
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    if (!(sxx > 0.0)) {
        throw DomainError("fit_line: x values are all equal");
    }
    LineFit f;
    f.points = xs.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (xs.size() > 2) {
        double rss = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            const double r = ys[k] - (f.slope * xs[k] + f.intercept);
            rss += r * r;
        }
        f.stderr_slope = std::sqrt(rss / (n - 2.0) / sxx);
    } else {
        f.stderr_slope = std::numeric_limits<double>::quiet_NaN();
    }
    return f;
}

/// OLS on (log x, log y); every value must be positive.
[[nodiscard]] inline LineFit fit_loglog_slope(const std::vector<double> &xs, const std::vector<double> &ys) {
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t k = 0; k < std::min(xs.size(), ys.size()); ++k) {
        if (!(xs[k] > 0.0) || !(ys[k] > 0.0)) {
            throw DomainError("fit_loglog_slope: values must be positive");
        }
        lx.push_back(std::log(xs[k]));
        ly.push_back(std::log(ys[k]));
    }
    if (xs.size() != ys.size()) {
        throw DomainError("fit_loglog_slope: x and y lengths differ");
    }
    return fit_line(lx, ly);
}

/// OLS on (x, log y); y must be positive.
[[nodiscard]] inline LineFit fit_semilog_slope(const std::vector<double> &xs, const std::vector<double> &ys) {
    std::vector<double> ly;
    for (const double y : ys) {
        if (!(y > 0.0)) {
            throw DomainError("fit_semilog_slope: values must be positive");
        }
        ly.push_back(std::log(y));
    }
    return fit_line(xs, ly);
}

/// Linear-interpolated quantile (type 7) of a non-empty sample.
[[nodiscard]] inline double quantile(std::vector<double> v, double q) {
    if (v.empty()) {
        throw DomainError("quantile: empty sample");
    }
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct Summary {
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double mean = 0.0;
    double stddev = 0.0; ///< sample standard deviation, 0 for one value
};

[[nodiscard]] inline Summary summarize(const std::vector<double> &v) {
    Summary s;
    s.median = quantile(v, 0.5);
    s.q25 = quantile(v, 0.25);
    s.q75 = quantile(v, 0.75);
    for (const double x : v) {
        s.mean += x;
    }
    s.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (const double x : v) {
            ss += (x - s.mean) * (x - s.mean);
        }
        s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return s;
}

} // namespace shadowqsd::experiment
