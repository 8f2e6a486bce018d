// Copyright 2026 The SQAV Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQAV_STATS_H
#define SQAV_STATS_H

#include <cmath>
#include <cstdint>
#include <span>

namespace sqav {

/// Pearson statistic sum (O - E)^2 / E over cells with positive expectation.
inline double chi_squared(std::span<const std::uint64_t> observed, std::span<const double> expected_prob,
                          std::uint64_t total) {
    double chi = 0;
    for (size_t i = 0; i < observed.size(); i++) {
        double e = expected_prob[i] * static_cast<double>(total);
        if (e > 0) {
            double d = static_cast<double>(observed[i]) - e;
            chi += d * d / e;
        }
    }
    return chi;
}

/// Mean plus three standard deviations of a chi-squared variable with `dof`
/// degrees of freedom.
inline double chi_squared_3sigma(int dof) {
    return dof + 3.0 * std::sqrt(2.0 * dof);
}

/// Standard error of a Bernoulli frequency estimate at probability p.
inline double bernoulli_stderr(double p, std::uint64_t trials) {
    return trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace sqav

#endif
