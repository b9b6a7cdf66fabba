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

#ifndef QTAMPER_MATRIX_HPP
#define QTAMPER_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace qtamper {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Largest matrix (in entries) any operation will materialize.
inline constexpr std::size_t kMaxMatrixEntries = std::size_t{1} << 24;

/// Throws SizeLimit if a rows x cols matrix would exceed kMaxMatrixEntries.
/// Checked in double precision so that d^n overflow is caught before allocation.
void check_matrix_size(double rows, double cols, std::string_view what);

/// Throws Shape unless the matrix is square; returns its dimension.
Index require_square(const ComplexMatrix &m, std::string_view what);

bool all_finite(const ComplexMatrix &m);
double max_abs(const ComplexMatrix &m);
ComplexMatrix identity(Index d);

/// Kronecker product, first factor most significant in the row/column index.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// The swap operator F on C^d (x) C^d, F(x (x) y) = y (x) x.
ComplexMatrix swap_operator(Index d);

/// Pure state normalized to unit 2-norm (within 1e-12).
class UnitVector {
   public:
    /// Throws Domain unless |v|^2 = 1 within 1e-12.
    explicit UnitVector(ComplexVector amplitudes);

    /// Normalizes v; throws Domain for the zero vector.
    static UnitVector normalized(const ComplexVector &v);
    static UnitVector basis(Index dim, Index i);

    Index dim() const { return amplitudes_.size(); }
    const ComplexVector &amplitudes() const { return amplitudes_; }
    Complex operator[](Index i) const { return amplitudes_[i]; }

    ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

   private:
    ComplexVector amplitudes_;
};

/// ||a><a| - |b><b|||_1 for pure states, via 2 sqrt(1 - |<a|b>|^2).
double pure_trace_norm_distance(const UnitVector &a, const UnitVector &b);

/// Checks that rho is Hermitian, PSD (min eigenvalue >= -tol) and unit-trace within tol.
/// Throws InvalidState naming the failed property.
void require_density_matrix(const ComplexMatrix &rho, double tol = 1e-9);

}  // namespace qtamper

#endif
