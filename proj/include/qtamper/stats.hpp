// Copyright 2026 The qtamper Authors
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

#ifndef QTAMPER_STATS_HPP
#define QTAMPER_STATS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qtamper/rng.hpp"

namespace qtamper {

/// Pairwise summation in a fixed order, so results do not depend on threading.
double stable_sum(std::span<const double> xs);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(n)
    std::size_t count = 0;
};

MeanEstimate estimate_mean(std::span<const double> xs);

/// Linear interpolation between order statistics (type 7). q in [0, 1].
double quantile(std::vector<double> xs, double q);

/// sup_x |F_n(x) - F(x)| for the empirical distribution of xs.
double ks_statistic(std::vector<double> xs, const std::function<double(double)> &cdf);

/// Asymptotic Kolmogorov tail with the small-sample correction of Stephens.
double ks_p_value(double statistic, std::size_t n);

/// CDF of Beta(1, b): 1 - (1 - x)^b.
double beta_1b_cdf(double x, double b);

/// Runs fn(trial, rng) for trial in [0, trials) with rng = SeededRng(seed, trial),
/// spread over worker threads. The output is indexed by trial.
std::vector<double> parallel_trials(std::size_t trials, std::uint64_t seed,
                                    const std::function<double(std::size_t, SeededRng &)> &fn);

/// Same contract for trials producing several values each.
std::vector<std::vector<double>> parallel_trials_multi(std::size_t trials, std::uint64_t seed,
                                                       const std::function<std::vector<double>(std::size_t, SeededRng &)> &fn);

}  // namespace qtamper

#endif
