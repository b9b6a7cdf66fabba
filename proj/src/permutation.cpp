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

#include "qtamper/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qtamper/error.hpp"

namespace qtamper {

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    const int n = degree();
    if (n < 1) fail(ErrorCode::InvalidDimension, "permutation degree must be >= 1");
    std::vector<char> seen(mapping_.size(), 0);
    for (int image : mapping_) {
        if (image < 0 || image >= n || seen[static_cast<std::size_t>(image)]) {
            fail(ErrorCode::Domain, "mapping is not a bijection on {0..n-1}");
        }
        seen[static_cast<std::size_t>(image)] = 1;
    }
    std::vector<char> visited(mapping_.size(), 0);
    for (int start = 0; start < n; ++start) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        std::vector<int> cycle;
        for (int i = start; !visited[static_cast<std::size_t>(i)]; i = mapping_[static_cast<std::size_t>(i)]) {
            visited[static_cast<std::size_t>(i)] = 1;
            cycle.push_back(i);
        }
        cycles_.push_back(std::move(cycle));
    }
}

Permutation Permutation::from_one_based(std::span<const int> mapping) {
    std::vector<int> zero_based(mapping.begin(), mapping.end());
    for (int &v : zero_based) --v;
    return Permutation(std::move(zero_based));
}

Permutation Permutation::identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>> &cycles) {
    std::vector<int> m(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(m.begin(), m.end(), 0);
    std::vector<char> used(m.size(), 0);
    for (const auto &cycle : cycles) {
        for (std::size_t j = 0; j < cycle.size(); ++j) {
            int from = cycle[j];
            int to = cycle[(j + 1) % cycle.size()];
            if (from < 0 || from >= n || to < 0 || to >= n || used[static_cast<std::size_t>(from)]) {
                fail(ErrorCode::Domain, "cycles are not disjoint subsets of {0..n-1}");
            }
            used[static_cast<std::size_t>(from)] = 1;
            m[static_cast<std::size_t>(from)] = to;
        }
    }
    return Permutation(std::move(m));
}

std::vector<int> Permutation::one_based() const {
    std::vector<int> out = mapping_;
    for (int &v : out) ++v;
    return out;
}

int Permutation::fixed_point_count() const {
    return static_cast<int>(std::count_if(cycles_.begin(), cycles_.end(), [](const auto &c) { return c.size() == 1; }));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(mapping_.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) inv[static_cast<std::size_t>(mapping_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation &rhs) const {
    if (rhs.degree() != degree()) fail(ErrorCode::Shape, "cannot compose permutations of different degree");
    std::vector<int> out(mapping_.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) out[i] = mapping_[static_cast<std::size_t>(rhs.mapping_[i])];
    return Permutation(std::move(out));
}

void Permutation::for_each(int n, const std::function<void(const Permutation &)> &visit) {
    if (n < 1) fail(ErrorCode::InvalidDimension, "permutation degree must be >= 1");
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    do {
        visit(Permutation(m));
    } while (std::next_permutation(m.begin(), m.end()));
}

std::size_t permute_tensor_index(const Permutation &pi, std::size_t d, std::size_t index) {
    const int n = pi.degree();
    std::vector<std::size_t> digits(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
        digits[static_cast<std::size_t>(j)] = index % d;
        index /= d;
    }
    std::vector<std::size_t> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(pi(j))] = digits[static_cast<std::size_t>(j)];
    std::size_t result = 0;
    for (std::size_t digit : out) result = result * d + digit;
    return result;
}

ComplexMatrix tensor_permutation_operator(const Permutation &pi, Index d) {
    if (d < 1) fail(ErrorCode::InvalidDimension, "local dimension must be >= 1", "d");
    double side = std::pow(static_cast<double>(d), pi.degree());
    check_matrix_size(side, side, "tensor permutation operator");
    const auto dim = static_cast<std::size_t>(side);
    ComplexMatrix v = ComplexMatrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
    for (std::size_t in = 0; in < dim; ++in) {
        v(static_cast<Index>(permute_tensor_index(pi, static_cast<std::size_t>(d), in)), static_cast<Index>(in)) = 1.0;
    }
    return v;
}

Complex trace_permuted_product(const Permutation &pi, std::span<const ComplexMatrix> mats) {
    if (static_cast<int>(mats.size()) != pi.degree()) {
        fail(ErrorCode::Shape, "expected " + std::to_string(pi.degree()) + " operators, got " + std::to_string(mats.size()));
    }
    const Index d = require_square(mats.front(), "operand");
    for (const auto &m : mats) {
        if (m.rows() != d || m.cols() != d) fail(ErrorCode::Shape, "operands must share one square dimension");
    }
    const Permutation inv = pi.inverse();
    Complex result = 1.0;
    for (const auto &cycle : pi.cycles()) {
        int i = cycle.front();
        ComplexMatrix product = mats[static_cast<std::size_t>(i)];
        for (std::size_t step = 1; step < cycle.size(); ++step) {
            i = inv(i);
            product = product * mats[static_cast<std::size_t>(i)];
        }
        result *= product.trace();
    }
    return result;
}

}  // namespace qtamper
