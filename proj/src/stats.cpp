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

#include "qtamper/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qtamper/error.hpp"

namespace qtamper {

double stable_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return stable_sum(xs.first(half)) + stable_sum(xs.subspan(half));
}

MeanEstimate estimate_mean(std::span<const double> xs) {
    MeanEstimate e;
    e.count = xs.size();
    if (xs.empty()) return e;
    e.mean = stable_sum(xs) / static_cast<double>(xs.size());
    if (xs.size() < 2) return e;
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - e.mean) * (xs[i] - e.mean);
    const double var = stable_sum(sq) / static_cast<double>(xs.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(xs.size()));
    return e;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) fail(ErrorCode::InvalidArgument, "quantile of an empty sample", "samples");
    if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::Domain, "quantile level must lie in [0, 1]", "q");
    std::sort(xs.begin(), xs.end());
    const double h = q * static_cast<double>(xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

double ks_statistic(std::vector<double> xs, const std::function<double(double)> &cdf) {
    if (xs.empty()) fail(ErrorCode::InvalidArgument, "KS statistic of an empty sample", "samples");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
    }
    return d;
}

double ks_p_value(double statistic, std::size_t n) {
    const double rn = std::sqrt(static_cast<double>(n));
    const double lambda = (rn + 0.12 + 0.11 / rn) * statistic;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double beta_1b_cdf(double x, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 1.0 - std::pow(1.0 - x, b);
}

namespace {

template <typename T>
std::vector<T> run_parallel(std::size_t trials, std::uint64_t seed, const std::function<T(std::size_t, SeededRng &)> &fn) {
    std::vector<T> out(trials);
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), trials));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= trials) return;
            try {
                SeededRng rng(seed, i);
                out[i] = fn(i, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(trials);
                return;
            }
        }
    };
    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto &t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace

std::vector<double> parallel_trials(std::size_t trials, std::uint64_t seed,
                                    const std::function<double(std::size_t, SeededRng &)> &fn) {
    return run_parallel<double>(trials, seed, fn);
}

std::vector<std::vector<double>> parallel_trials_multi(std::size_t trials, std::uint64_t seed,
                                                       const std::function<std::vector<double>(std::size_t, SeededRng &)> &fn) {
    return run_parallel<std::vector<double>>(trials, seed, fn);
}

}  // namespace qtamper
