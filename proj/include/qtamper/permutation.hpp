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

#ifndef QTAMPER_PERMUTATION_HPP
#define QTAMPER_PERMUTATION_HPP

#include <functional>
#include <span>
#include <vector>

#include "qtamper/matrix.hpp"

namespace qtamper {

/// Element of the symmetric group S_n.
///
/// Points are 0-based in the C++ API ({0, ..., n-1}); the JSON form and
/// from_one_based() use the conventional 1-based mapping array. The cycle
/// decomposition is computed once at construction: cycles are listed by
/// increasing smallest element, each starting at that element and following
/// i -> pi(i).
///
/// Composition is right-to-left: (p * q)(i) = p(q(i)).
class Permutation {
   public:
    /// mapping[i] = pi(i), 0-based. Throws Domain unless it is a bijection.
    explicit Permutation(std::vector<int> mapping);

    static Permutation from_one_based(std::span<const int> mapping);
    static Permutation identity(int n);
    /// Builds a permutation of degree n from disjoint 0-based cycles; unlisted points are fixed.
    static Permutation from_cycles(int n, const std::vector<std::vector<int>> &cycles);

    int degree() const { return static_cast<int>(mapping_.size()); }
    int operator()(int i) const { return mapping_[static_cast<std::size_t>(i)]; }
    const std::vector<int> &mapping() const { return mapping_; }
    std::vector<int> one_based() const;

    const std::vector<std::vector<int>> &cycles() const { return cycles_; }
    /// #pi, the number of cycles (fixed points included).
    int cycle_count() const { return static_cast<int>(cycles_.size()); }
    /// Fix(pi), the number of length-1 cycles.
    int fixed_point_count() const;

    Permutation inverse() const;
    Permutation operator*(const Permutation &rhs) const;
    bool operator==(const Permutation &rhs) const { return mapping_ == rhs.mapping_; }

    /// Visits every element of S_n in lexicographic order of the mapping.
    static void for_each(int n, const std::function<void(const Permutation &)> &visit);

   private:
    std::vector<int> mapping_;
    std::vector<std::vector<int>> cycles_;
};

/// Maps a basis index of (C^d)^{(x) n} through V(pi).
///
/// Factor 0 is the most significant digit. V(pi) sends
/// v_1 (x) ... (x) v_n to v_{pi^-1(1)} (x) ... (x) v_{pi^-1(n)}, i.e. the
/// factor in slot j moves to slot pi(j).
std::size_t permute_tensor_index(const Permutation &pi, std::size_t d, std::size_t index);

/// The d^n x d^n permutation matrix V(pi). Throws SizeLimit above the matrix ceiling.
ComplexMatrix tensor_permutation_operator(const Permutation &pi, Index d);

/// Tr[(M_1 (x) ... (x) M_n) V(pi)] evaluated cycle by cycle without forming the
/// tensor product.
///
/// Each cycle contributes Tr[M_c M_{pi^-1(c)} M_{pi^-2(c)} ...]; with V(pi)
/// acting as above, the operator product runs against the direction of the
/// cycle. For transpositions and the identity the direction is immaterial.
Complex trace_permuted_product(const Permutation &pi, std::span<const ComplexMatrix> mats);

}  // namespace qtamper

#endif
