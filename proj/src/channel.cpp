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

#include "qtamper/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qtamper/error.hpp"
#include "qtamper/haar.hpp"

namespace qtamper {

QuantumChannel::QuantumChannel(Index dim_in, Index dim_out, std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    if (dim_in_ < 1 || dim_out_ < 1) fail(ErrorCode::InvalidDimension, "channel dimensions must be >= 1");
    if (kraus_.empty()) fail(ErrorCode::InvalidArgument, "channel needs at least one Kraus operator", "kraus");
    for (std::size_t i = 0; i < kraus_.size(); ++i) {
        const auto &k = kraus_[i];
        if (k.rows() != dim_out_ || k.cols() != dim_in_) {
            fail(ErrorCode::Shape,
                 "Kraus operator " + std::to_string(i) + " is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                     ", expected " + std::to_string(dim_out_) + "x" + std::to_string(dim_in_),
                 "kraus");
        }
        if (!all_finite(k)) fail(ErrorCode::InvalidArgument, "Kraus operator has non-finite entries", "kraus");
    }
}

QuantumChannel QuantumChannel::from_choi(const ChoiMatrix &choi) {
    return QuantumChannel(choi.dim_in(), choi.dim_out(), canonical_kraus(choi));
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix &rho) const {
    if (rho.rows() != dim_in_ || rho.cols() != dim_in_) fail(ErrorCode::Shape, "input operator has the wrong dimension");
    ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
    for (const auto &k : kraus_) out.noalias() += k * rho * k.adjoint();
    return out;
}

ComplexMatrix QuantumChannel::apply_pure(const ComplexVector &psi) const {
    if (psi.size() != dim_in_) fail(ErrorCode::Shape, "input state has the wrong dimension");
    ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
    for (const auto &k : kraus_) {
        ComplexVector w = k * psi;
        out.noalias() += w * w.adjoint();
    }
    return out;
}

ChoiMatrix::ChoiMatrix(Index dim_in, Index dim_out, ComplexMatrix matrix)
    : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {
    if (dim_in_ < 1 || dim_out_ < 1) fail(ErrorCode::InvalidDimension, "Choi dimensions must be >= 1");
    if (matrix_.rows() != dim_in_ * dim_out_ || matrix_.cols() != dim_in_ * dim_out_) {
        fail(ErrorCode::Shape, "Choi matrix must be dD x dD", "choi");
    }
    if (!all_finite(matrix_)) fail(ErrorCode::InvalidArgument, "Choi matrix has non-finite entries", "choi");
    if (max_abs(matrix_ - matrix_.adjoint()) > 1e-10 * std::max(1.0, max_abs(matrix_))) {
        fail(ErrorCode::Domain, "Choi matrix is not Hermitian", "choi");
    }
}

ComplexMatrix ChoiMatrix::partial_trace_output() const {
    const Index d = dim_in_;
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (Index a = 0; a < dim_out_; ++a) out += matrix_.block(a * d, a * d, d, d);
    return out;
}

namespace {

/// Kraus operators stacked as columns of the dD x r matrix with column k = vec(K_k), v[a d + i] = K_k(a, i).
ComplexMatrix kraus_columns(const QuantumChannel &ch) {
    const Index d = ch.dim_in();
    const Index dd = ch.dim_out();
    ComplexMatrix cols(d * dd, static_cast<Index>(ch.kraus_count()));
    for (std::size_t k = 0; k < ch.kraus_count(); ++k) {
        const auto &op = ch.kraus()[k];
        for (Index a = 0; a < dd; ++a) {
            for (Index i = 0; i < d; ++i) cols(a * d + i, static_cast<Index>(k)) = op(a, i);
        }
    }
    return cols;
}

/// Full eigenvalue list of J, ascending, computed through the smaller of J and the Gram matrix.
Eigen::VectorXd choi_eigenvalues(const QuantumChannel &ch) {
    const Index dd = ch.dim_in() * ch.dim_out();
    const auto r = static_cast<Index>(ch.kraus_count());
    ComplexMatrix cols = kraus_columns(ch);
    if (r < dd) {
        ComplexMatrix gram = cols.adjoint() * cols;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
        Eigen::VectorXd all = Eigen::VectorXd::Zero(dd);
        all.tail(r) = es.eigenvalues();
        std::sort(all.data(), all.data() + all.size());
        return all;
    }
    check_matrix_size(static_cast<double>(dd), static_cast<double>(dd), "Choi matrix");
    ComplexMatrix j = cols * cols.adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(j, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

ChannelVerdict validate(const QuantumChannel &ch) {
    ChannelVerdict v;
    const Index d = ch.dim_in();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &k : ch.kraus()) sum.noalias() += k.adjoint() * k;
    v.tp_residual = max_abs(sum - identity(d));
    v.tp_ok = v.tp_residual <= kTraceTolerancePerDim * static_cast<double>(d);
    Eigen::VectorXd eig = choi_eigenvalues(ch);
    v.choi_min_eigenvalue = eig.minCoeff();
    v.choi_max_eigenvalue = eig.maxCoeff();
    v.cp_ok = v.choi_min_eigenvalue >= -kCpTolerance * std::max(v.choi_max_eigenvalue, 0.0);
    return v;
}

ChoiMatrix choi_of(const QuantumChannel &ch) {
    const Index dd = ch.dim_in() * ch.dim_out();
    check_matrix_size(static_cast<double>(dd), static_cast<double>(dd), "Choi matrix");
    ComplexMatrix cols = kraus_columns(ch);
    ComplexMatrix j = cols * cols.adjoint();
    return ChoiMatrix(ch.dim_in(), ch.dim_out(), 0.5 * (j + j.adjoint()));
}

std::vector<double> choi_spectrum(const QuantumChannel &ch) {
    Eigen::VectorXd eig = choi_eigenvalues(ch);
    std::vector<double> out(eig.data(), eig.data() + eig.size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

double rank_threshold(Index dim_in, Index dim_out, double lambda_max) {
    return static_cast<double>(dim_in * dim_out) * std::numeric_limits<double>::epsilon() * lambda_max;
}

int min_kraus_rank(const QuantumChannel &ch) {
    std::vector<double> spectrum = choi_spectrum(ch);
    const double tau = rank_threshold(ch.dim_in(), ch.dim_out(), spectrum.front());
    return static_cast<int>(std::count_if(spectrum.begin(), spectrum.end(), [tau](double x) { return x > tau; }));
}

std::vector<ComplexMatrix> canonical_kraus(const ChoiMatrix &choi) {
    const Index d = choi.dim_in();
    const Index dd = choi.dim_out();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (choi.matrix() + choi.matrix().adjoint()));
    const Eigen::VectorXd &values = es.eigenvalues();
    const double lambda_max = values.maxCoeff();
    if (values.minCoeff() < -kCpTolerance * std::max(lambda_max, 0.0)) {
        fail(ErrorCode::Domain, "Choi matrix is not positive semi-definite", "choi");
    }
    const double tau = rank_threshold(d, dd, lambda_max);

    struct Pair {
        double value;
        ComplexVector vec;
    };
    std::vector<Pair> pairs;
    for (Index i = 0; i < values.size(); ++i) {
        if (values[i] <= tau) continue;
        ComplexVector v = es.eigenvectors().col(i);
        for (Index j = 0; j < v.size(); ++j) {
            double mag = std::abs(v[j]);
            if (mag > 1e-12) {
                v *= std::conj(v[j]) / mag;
                break;
            }
        }
        pairs.push_back({values[i], std::move(v)});
    }
    auto lex_less = [](const ComplexVector &a, const ComplexVector &b) {
        for (Index j = 0; j < a.size(); ++j) {
            if (a[j].real() != b[j].real()) return a[j].real() < b[j].real();
            if (a[j].imag() != b[j].imag()) return a[j].imag() < b[j].imag();
        }
        return false;
    };
    std::sort(pairs.begin(), pairs.end(), [&](const Pair &x, const Pair &y) {
        if (x.value != y.value) return x.value > y.value;
        return lex_less(x.vec, y.vec);
    });

    std::vector<ComplexMatrix> kraus;
    for (const auto &p : pairs) {
        ComplexMatrix k(dd, d);
        const double s = std::sqrt(p.value);
        for (Index a = 0; a < dd; ++a) {
            for (Index i = 0; i < d; ++i) k(a, i) = s * p.vec[a * d + i];
        }
        kraus.push_back(std::move(k));
    }
    if (kraus.empty()) fail(ErrorCode::Domain, "Choi matrix is zero", "choi");
    return kraus;
}

double entanglement_fidelity(const QuantumChannel &ch) {
    if (ch.dim_in() != ch.dim_out()) fail(ErrorCode::Domain, "entanglement fidelity needs dim_in = dim_out");
    const double d = static_cast<double>(ch.dim_in());
    double total = 0.0;
    for (const auto &k : ch.kraus()) total += std::norm(k.trace());
    return total / (d * d);
}

double entanglement_fidelity_omega(const QuantumChannel &ch) {
    if (ch.dim_in() != ch.dim_out()) fail(ErrorCode::Domain, "entanglement fidelity needs dim_in = dim_out");
    const Index d = ch.dim_in();
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexVector omega = ComplexVector::Zero(d * d);
    for (Index i = 0; i < d; ++i) omega[i * d + i] = amp;
    // <Omega|(Phi (x) id)(|Omega><Omega|)|Omega> = sum_k |<Omega|(K_k (x) I)|Omega>|^2
    double total = 0.0;
    for (const auto &k : ch.kraus()) {
        ComplexVector image = ComplexVector::Zero(d * d);
        for (Index a = 0; a < d; ++a) {
            for (Index i = 0; i < d; ++i) image[a * d + i] = k(a, i) * amp;
        }
        total += std::norm(omega.dot(image));
    }
    return total;
}

StinespringIsometry::StinespringIsometry(Index dim_in, Index dim_out, Index dim_env, ComplexMatrix isometry)
    : dim_in_(dim_in), dim_out_(dim_out), dim_env_(dim_env), isometry_(std::move(isometry)) {
    if (isometry_.rows() != dim_out_ * dim_env_ || isometry_.cols() != dim_in_) {
        fail(ErrorCode::Shape, "isometry must be (D e) x d");
    }
}

ComplexMatrix StinespringIsometry::apply(const ComplexMatrix &rho) const {
    if (rho.rows() != dim_in_ || rho.cols() != dim_in_) fail(ErrorCode::Shape, "input operator has the wrong dimension");
    ComplexMatrix big = isometry_ * rho * isometry_.adjoint();
    ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
    for (Index a = 0; a < dim_out_; ++a) {
        for (Index b = 0; b < dim_out_; ++b) {
            Complex s = 0.0;
            for (Index e = 0; e < dim_env_; ++e) s += big(a * dim_env_ + e, b * dim_env_ + e);
            out(a, b) = s;
        }
    }
    return out;
}

StinespringIsometry stinespring_of(const QuantumChannel &ch) {
    const auto e = static_cast<Index>(ch.kraus_count());
    check_matrix_size(static_cast<double>(ch.dim_out()) * static_cast<double>(e), static_cast<double>(ch.dim_in()),
                      "Stinespring isometry");
    ComplexMatrix v(ch.dim_out() * e, ch.dim_in());
    for (Index k = 0; k < e; ++k) {
        const auto &op = ch.kraus()[static_cast<std::size_t>(k)];
        for (Index a = 0; a < ch.dim_out(); ++a) v.row(a * e + k) = op.row(a);
    }
    return StinespringIsometry(ch.dim_in(), ch.dim_out(), e, std::move(v));
}

QuantumChannel identity_channel(Index d) {
    return QuantumChannel(d, d, {identity(d)});
}

QuantumChannel unitary_channel(const ComplexMatrix &v) {
    const Index d = require_square(v, "unitary");
    return QuantumChannel(d, d, {v});
}

QuantumChannel completely_depolarizing_channel(Index d) {
    if (d < 1) fail(ErrorCode::InvalidDimension, "dimension must be >= 1", "d");
    check_matrix_size(static_cast<double>(d) * d * d, static_cast<double>(d), "depolarizing Kraus set");
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(static_cast<std::size_t>(d * d));
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            ComplexMatrix k = ComplexMatrix::Zero(d, d);
            k(i, j) = amp;
            kraus.push_back(std::move(k));
        }
    }
    return QuantumChannel(d, d, std::move(kraus));
}

QuantumChannel sample_random_channel(Index d, Index rank, SeededRng &rng) {
    if (d < 1 || rank < 1) fail(ErrorCode::InvalidDimension, "dimension and rank must be >= 1");
    ComplexMatrix u = sample_haar_unitary(d * rank, rng);
    std::vector<ComplexMatrix> kraus;
    for (Index k = 0; k < rank; ++k) {
        ComplexMatrix op(d, d);
        for (Index a = 0; a < d; ++a) {
            for (Index i = 0; i < d; ++i) op(a, i) = u(a * rank + k, i);
        }
        kraus.push_back(std::move(op));
    }
    return QuantumChannel(d, d, std::move(kraus));
}

bool is_unitary_channel(const QuantumChannel &ch, double tol) {
    if (ch.kraus_count() != 1 || ch.dim_in() != ch.dim_out()) return false;
    const auto &k = ch.kraus().front();
    return max_abs(k.adjoint() * k - identity(ch.dim_in())) <= tol;
}

}  // namespace qtamper
