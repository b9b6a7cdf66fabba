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

#include "qtamper/twirl.hpp"

#include <cmath>
#include <string>

#include "qtamper/error.hpp"
#include "qtamper/permutation.hpp"

namespace qtamper {

namespace {

Index integer_root(Index n, int k) {
    auto r = static_cast<Index>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
    for (Index c = std::max<Index>(1, r - 1); c <= r + 1; ++c) {
        Index p = 1;
        for (int i = 0; i < k; ++i) p *= c;
        if (p == n) return c;
    }
    return 0;
}

}  // namespace

ComplexMatrix twirl_exact(const ComplexMatrix &m, int k) {
    if (k != 1 && k != 2) {
        fail(ErrorCode::UnsupportedOrder, "exact twirl is implemented for k = 1 and 2; use twirl_approx", "k");
    }
    const Index side = require_square(m, "twirl input");
    if (k == 1) return (m.trace() / static_cast<double>(side)) * identity(side);

    const Index d = integer_root(side, 2);
    if (d == 0) fail(ErrorCode::Shape, "k = 2 twirl input must be d^2 x d^2", "M");
    Complex tr = m.trace();
    Complex tr_f = 0.0;
    for (Index a = 0; a < d; ++a) {
        for (Index b = 0; b < d; ++b) tr_f += m(a * d + b, b * d + a);
    }
    ComplexMatrix f = swap_operator(d);
    if (d == 1) return tr * identity(1);
    const double dd = static_cast<double>(d);
    Complex c_i = (tr - tr_f / dd) / (dd * dd - 1.0);
    Complex c_f = (tr_f - tr / dd) / (dd * dd - 1.0);
    return c_i * identity(side) + c_f * f;
}

double twirl_approx_min_dimension(int k) {
    return std::sqrt(6.0) * std::pow(static_cast<double>(k), 1.75);
}

TwirlApprox twirl_approx(const ComplexMatrix &m, int k, Index d, const TwirlApproxOptions &options) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "moment order must be >= 1", "k");
    if (d < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1", "d");
    const double side_d = std::pow(static_cast<double>(d), k);
    check_matrix_size(side_d, side_d, "approximate twirl");
    const auto side = static_cast<Index>(side_d);
    if (m.rows() != side || m.cols() != side) {
        fail(ErrorCode::Shape, "input must be d^k x d^k = " + std::to_string(side) + " square", "M");
    }
    TwirlApprox out;
    out.in_regime = static_cast<double>(d) > twirl_approx_min_dimension(k);
    if (!out.in_regime && !options.allow_outside_regime) {
        fail(ErrorCode::Domain,
             "requires d > sqrt(6) k^(7/4) = " + std::to_string(twirl_approx_min_dimension(k)), "d");
    }
    const double scale = std::pow(static_cast<double>(d), -k);
    out.value = ComplexMatrix::Zero(side, side);
    std::vector<std::size_t> image(static_cast<std::size_t>(side));
    Permutation::for_each(k, [&](const Permutation &pi) {
        // V(pi) has a single 1 per column, at row image[x]; so
        // Tr[V(pi)^-1 M] = sum_x M(image[x], x).
        Complex overlap = 0.0;
        for (Index x = 0; x < side; ++x) {
            image[static_cast<std::size_t>(x)] = permute_tensor_index(pi, static_cast<std::size_t>(d), static_cast<std::size_t>(x));
            overlap += m(static_cast<Index>(image[static_cast<std::size_t>(x)]), x);
        }
        Complex coef = overlap * scale;
        for (Index x = 0; x < side; ++x) out.value(static_cast<Index>(image[static_cast<std::size_t>(x)]), x) += coef;
    });
    const double spread = options.sandwich_constant * k * k / static_cast<double>(d);
    out.lower_factor = 1.0 - spread;
    out.upper_factor = 1.0 + spread;
    return out;
}

}  // namespace qtamper
