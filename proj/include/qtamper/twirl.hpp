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

#ifndef QTAMPER_TWIRL_HPP
#define QTAMPER_TWIRL_HPP

#include "qtamper/matrix.hpp"

namespace qtamper {

/// Exact Haar twirl E_U[U^{(x)k} M U^{*(x)k}] for k in {1, 2}.
///
/// k = 1: (Tr[M] / d) I_d.
/// k = 2: c_I I + c_F F with
///   c_I = (Tr[N] - Tr[N F] / d) / (d^2 - 1),
///   c_F = (Tr[N F] - Tr[N] / d) / (d^2 - 1).
/// The local dimension d is inferred from M (d^k x d^k). For k = 2, d = 1 is
/// handled as the degenerate case I = F. Throws UnsupportedOrder for other k.
ComplexMatrix twirl_exact(const ComplexMatrix &m, int k);

struct TwirlApproxOptions {
    /// Hidden constant C in the (1 +/- C k^2 / d) sandwich factors.
    double sandwich_constant = 4.0;
    /// Evaluate even when d <= sqrt(6) k^{7/4}. The sandwich factors are then
    /// reported but carry no guarantee.
    bool allow_outside_regime = false;
};

struct TwirlApprox {
    ComplexMatrix value;
    double lower_factor = 0.0;  ///< 1 - C k^2 / d
    double upper_factor = 0.0;  ///< 1 + C k^2 / d
    bool in_regime = false;     ///< d > sqrt(6) k^{7/4}
    static constexpr bool heuristic = true;
};

/// sqrt(6) k^{7/4}, the dimension the approximation needs to exceed.
double twirl_approx_min_dimension(int k);

/// Psi_k(M) = d^{-k} sum_{pi in S_k} Tr[V(pi)^{-1} M] V(pi).
///
/// Accumulates the permutation operators entrywise, so memory is one d^k x d^k
/// output. Throws Domain when d <= sqrt(6) k^{7/4} unless
/// options.allow_outside_regime is set.
TwirlApprox twirl_approx(const ComplexMatrix &m, int k, Index d, const TwirlApproxOptions &options = {});

}  // namespace qtamper

#endif
