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

#include "qtamper/combinatorics.hpp"

#include <algorithm>

#include "qtamper/error.hpp"

namespace qtamper {

std::int64_t rising_factorial(std::int64_t x, int n) {
    std::int64_t r = 1;
    for (int i = 0; i < n; ++i) r *= x + i;
    return r;
}

std::int64_t stirling_first_unsigned(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    // [n+1 k] = n [n k] + [n k-1]
    std::vector<std::vector<std::int64_t>> s(static_cast<std::size_t>(n) + 1,
                                             std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0));
    s[0][0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= i; ++j) {
            s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (i - 1) * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] +
                s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
        }
    }
    return s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::int64_t factorial(int n) {
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

bool is_parity_alternating(const Permutation &pi) {
    for (int i = 0; i < pi.degree(); ++i) {
        if (((i + pi(i)) & 1) == 0) return false;
    }
    return true;
}

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

CombinatoricsReport combinatorics_suite(int n_max) {
    if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1", "n_max");
    if (n_max > kMaxCombinatoricsDegree) {
        fail(ErrorCode::SizeLimit, "exhaustive enumeration is limited to n_max <= 6", "n_max");
    }
    CombinatoricsReport report;
    report.n_max = n_max;
    bool pass = true;

    for (int n = 1; n <= n_max; ++n) {
        FixedPointCheck check;
        check.n = n;
        check.min_slack = n;
        Permutation::for_each(n, [&](const Permutation &pi) {
            ++check.permutations;
            int slack = pi.fixed_point_count() - (2 * pi.cycle_count() - 2 * n);
            check.min_slack = std::min(check.min_slack, slack);
            if (slack < 0) ++check.violations;
        });
        pass = pass && check.violations == 0;
        report.fixed_points.push_back(check);
    }

    for (int n = 1; 2 * n <= n_max; ++n) {
        std::vector<int> cycle_counts;
        Permutation::for_each(2 * n, [&](const Permutation &pi) {
            if (is_parity_alternating(pi)) cycle_counts.push_back(pi.cycle_count());
        });
        for (std::int64_t x = 1; x <= 3; ++x) {
            ParityAlternatingCheck check;
            check.n = n;
            check.x = x;
            check.subset_size = static_cast<std::int64_t>(cycle_counts.size());
            for (int c : cycle_counts) check.sum += ipow(x, c);
            check.expected = factorial(n) * rising_factorial(x, n);
            check.pass = check.sum == check.expected;
            pass = pass && check.pass;
            report.parity_alternating.push_back(check);
        }
    }

    for (int n = 1; n <= n_max; ++n) {
        for (std::int64_t x = 1; x <= 3; ++x) {
            StirlingCheck check;
            check.n = n;
            check.x = x;
            for (int k = 0; k <= n; ++k) check.stirling_sum += stirling_first_unsigned(n, k) * ipow(x, k);
            check.rising = rising_factorial(x, n);
            check.pass = check.stirling_sum == check.rising;
            pass = pass && check.pass;
            report.stirling.push_back(check);
        }
    }
    report.pass = pass;
    return report;
}

}  // namespace qtamper
