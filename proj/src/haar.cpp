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

#include "qtamper/haar.hpp"

#include <Eigen/QR>

#include "qtamper/error.hpp"

namespace qtamper {

namespace {

ComplexMatrix ginibre(Index rows, Index cols, SeededRng &rng) {
    ComplexMatrix g(rows, cols);
    // Row-major fill order is part of the reproducibility contract.
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
    }
    return g;
}

}  // namespace

ComplexMatrix sample_haar_unitary(Index d, SeededRng &rng) {
    if (d < 1) fail(ErrorCode::InvalidDimension, "Haar unitary dimension must be >= 1", "d");
    check_matrix_size(static_cast<double>(d), static_cast<double>(d), "Haar unitary");
    ComplexMatrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Index j = 0; j < d; ++j) {
        Complex diag = r(j, j);
        double mag = std::abs(diag);
        // A zero pivot has probability zero; leave the column untouched if it happens.
        if (mag > 0.0) q.col(j) *= diag / mag;
    }
    return q;
}

UnitVector sample_unit_vector(Index dim, SeededRng &rng) {
    if (dim < 1) fail(ErrorCode::InvalidDimension, "state dimension must be >= 1", "dim");
    ComplexVector v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = rng.complex_normal();
    return UnitVector::normalized(v);
}

ComplexMatrix sample_density_matrix(Index dim, Index rank, SeededRng &rng) {
    if (dim < 1 || rank < 1) fail(ErrorCode::InvalidDimension, "density matrix dimension and rank must be >= 1");
    ComplexMatrix g = ginibre(dim, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

double unitarity_defect(const ComplexMatrix &u) {
    require_square(u, "unitary");
    return max_abs(u.adjoint() * u - identity(u.rows()));
}

}  // namespace qtamper
