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

#ifndef QTAMPER_COMBINATORICS_HPP
#define QTAMPER_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

#include "qtamper/permutation.hpp"

namespace qtamper {

/// x (x + 1) ... (x + n - 1); 1 for n = 0.
std::int64_t rising_factorial(std::int64_t x, int n);
/// Unsigned Stirling number of the first kind [n k].
std::int64_t stirling_first_unsigned(int n, int k);
std::int64_t factorial(int n);

/// True when pi maps every even point to an odd one and vice versa.
bool is_parity_alternating(const Permutation &pi);

struct FixedPointCheck {
    int n = 0;
    std::int64_t permutations = 0;
    std::int64_t violations = 0;
    /// Smallest observed slack Fix(pi) - (2 #pi - 2n).
    int min_slack = 0;
};

struct ParityAlternatingCheck {
    int n = 0;  ///< half the degree; the sum runs over the parity-alternating subset of S_2n
    std::int64_t x = 0;
    std::int64_t subset_size = 0;
    std::int64_t sum = 0;       ///< sum of x^{#pi} over the subset
    std::int64_t expected = 0;  ///< n! x^(rising n)
    bool pass = false;
};

struct StirlingCheck {
    int n = 0;
    std::int64_t x = 0;
    std::int64_t stirling_sum = 0;  ///< sum_k [n k] x^k
    std::int64_t rising = 0;        ///< x^(rising n)
    bool pass = false;
};

struct CombinatoricsReport {
    int n_max = 0;
    std::vector<FixedPointCheck> fixed_points;
    std::vector<ParityAlternatingCheck> parity_alternating;
    std::vector<StirlingCheck> stirling;
    bool pass = false;
};

inline constexpr int kMaxCombinatoricsDegree = 6;

/// Exhaustive check of Fix(pi) >= 2 #pi - 2n over S_n (n <= n_max), of the
/// parity-alternating sum identity for n <= n_max / 2 and x in {1, 2, 3}, and
/// of the Stirling / rising-factorial identity. Throws SizeLimit for n_max > 6.
CombinatoricsReport combinatorics_suite(int n_max);

}  // namespace qtamper

#endif
