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

#ifndef QTAMPER_HAAR_HPP
#define QTAMPER_HAAR_HPP

#include "qtamper/matrix.hpp"
#include "qtamper/rng.hpp"

namespace qtamper {

/// Haar-distributed d x d unitary.
///
/// Draws a complex Ginibre matrix (entries with independent N(0, 1/2) real and
/// imaginary parts), takes a Householder QR factorization G = QR and returns
/// Q * diag(R_ii / |R_ii|). The phase correction makes the factorization
/// unique, which is what makes the result exactly Haar; bare Q is not.
ComplexMatrix sample_haar_unitary(Index d, SeededRng &rng);

/// Uniformly random pure state on C^dim (normalized complex Gaussian vector).
UnitVector sample_unit_vector(Index dim, SeededRng &rng);

/// Random density matrix G G* / Tr[G G*] with G a dim x rank Ginibre matrix.
ComplexMatrix sample_density_matrix(Index dim, Index rank, SeededRng &rng);

/// ||U* U - I||_max.
double unitarity_defect(const ComplexMatrix &u);

}  // namespace qtamper

#endif
