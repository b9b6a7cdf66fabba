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

#include "qtamper/matrix.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qtamper/error.hpp"

namespace qtamper {

void check_matrix_size(double rows, double cols, std::string_view what) {
    double entries = rows * cols;
    if (!(entries <= static_cast<double>(kMaxMatrixEntries))) {
        fail(ErrorCode::SizeLimit,
             std::string(what) + " would need " + std::to_string(entries) + " entries (ceiling " +
                 std::to_string(kMaxMatrixEntries) + ")");
    }
}

Index require_square(const ComplexMatrix &m, std::string_view what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        fail(ErrorCode::Shape, std::string(what) + " must be a non-empty square matrix, got " +
                                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    return m.rows();
}

bool all_finite(const ComplexMatrix &m) {
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
        }
    }
    return true;
}

double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix identity(Index d) {
    return ComplexMatrix::Identity(d, d);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    check_matrix_size(static_cast<double>(a.rows()) * b.rows(), static_cast<double>(a.cols()) * b.cols(),
                      "Kronecker product");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix swap_operator(Index d) {
    check_matrix_size(static_cast<double>(d) * d, static_cast<double>(d) * d, "swap operator");
    ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
    for (Index x = 0; x < d; ++x) {
        for (Index y = 0; y < d; ++y) f(y * d + x, x * d + y) = 1.0;
    }
    return f;
}

UnitVector::UnitVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) fail(ErrorCode::InvalidDimension, "unit vector must have dimension >= 1");
    double norm2 = amplitudes_.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-12) {
        fail(ErrorCode::Domain, "vector is not normalized (squared norm " + std::to_string(norm2) + ")");
    }
}

UnitVector UnitVector::normalized(const ComplexVector &v) {
    double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorCode::Domain, "cannot normalize a zero or non-finite vector");
    return UnitVector(v / n);
}

UnitVector UnitVector::basis(Index dim, Index i) {
    if (dim < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1");
    if (i < 0 || i >= dim) fail(ErrorCode::Domain, "basis index out of range");
    ComplexVector v = ComplexVector::Zero(dim);
    v[i] = 1.0;
    return UnitVector(std::move(v));
}

double pure_trace_norm_distance(const UnitVector &a, const UnitVector &b) {
    if (a.dim() != b.dim()) fail(ErrorCode::Shape, "states have different dimensions");
    double overlap = std::norm(a.amplitudes().dot(b.amplitudes()));
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap));
}

void require_density_matrix(const ComplexMatrix &rho, double tol) {
    require_square(rho, "density matrix");
    if (!all_finite(rho)) fail(ErrorCode::InvalidState, "density matrix has non-finite entries");
    if (max_abs(rho - rho.adjoint()) > tol) fail(ErrorCode::InvalidState, "density matrix is not Hermitian");
    double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        fail(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(tr) + ", expected 1");
    }
    ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) fail(ErrorCode::InvalidState, "density matrix is not positive semi-definite");
}

}  // namespace qtamper
