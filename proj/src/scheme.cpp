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

#include "qtamper/scheme.hpp"

#include <cmath>
#include <string>

#include "qtamper/error.hpp"
#include "qtamper/haar.hpp"

namespace qtamper {

namespace {

bool is_power_of_two(Index d) {
    return d >= 1 && (d & (d - 1)) == 0;
}

}  // namespace

HaarScheme::HaarScheme(ComplexMatrix unitary, int k) : unitary_(std::move(unitary)), k_(k) {
    const Index d = require_square(unitary_, "scheme unitary");
    if (!is_power_of_two(d)) fail(ErrorCode::InvalidDimension, "scheme dimension must be a power of two", "d");
    if (k_ < 0 || k_ > 62 || (Index{1} << k_) > d) {
        fail(ErrorCode::InvalidDimension, "message register needs 2^k <= d", "k");
    }
    if (unitarity_defect(unitary_) > 1e-10) fail(ErrorCode::Domain, "scheme matrix is not unitary", "unitary");
}

HaarScheme HaarScheme::sample(Index d, int k, SeededRng &rng) {
    if (!is_power_of_two(d)) fail(ErrorCode::InvalidDimension, "scheme dimension must be a power of two", "d");
    return HaarScheme(sample_haar_unitary(d, rng), k);
}

double HaarScheme::expansion_factor() const {
    return std::log2(static_cast<double>(dim())) / static_cast<double>(k_);
}

Index HaarScheme::layout(std::size_t m) const {
    if (m >= message_count()) fail(ErrorCode::Domain, "message index out of range", "m");
    return static_cast<Index>(m) * ancilla_dim();
}

UnitVector HaarScheme::encode(std::size_t m) const {
    return UnitVector::normalized(unitary_.col(layout(m)));
}

DecodeDistribution decode_distribution(const HaarScheme &scheme, const ComplexMatrix &rho) {
    if (rho.rows() != scheme.dim() || rho.cols() != scheme.dim()) fail(ErrorCode::Shape, "state has the wrong dimension");
    require_density_matrix(rho);
    DecodeDistribution out;
    out.message.resize(scheme.message_count());
    double accepted = 0.0;
    for (std::size_t m = 0; m < scheme.message_count(); ++m) {
        ComplexVector col = scheme.unitary().col(scheme.layout(m));
        double p = std::max(0.0, col.dot(rho * col).real());
        out.message[m] = p;
        accepted += p;
    }
    out.reject = std::max(0.0, 1.0 - accepted);
    return out;
}

QuantumMessageScheme::QuantumMessageScheme(HaarScheme base) : base_(std::move(base)) {
    const Index d = base_.dim();
    code_projector_ = ComplexMatrix::Zero(d, d);
    for (std::size_t m = 0; m < base_.message_count(); ++m) {
        ComplexVector col = base_.unitary().col(base_.layout(m));
        code_projector_.noalias() += col * col.adjoint();
    }
}

UnitVector QuantumMessageScheme::encode(const UnitVector &message) const {
    if (static_cast<std::size_t>(message.dim()) != base_.message_count()) {
        fail(ErrorCode::Shape, "message state must live on C^(2^k)", "message");
    }
    ComplexVector padded = ComplexVector::Zero(base_.dim());
    for (std::size_t m = 0; m < base_.message_count(); ++m) padded[base_.layout(m)] = message[static_cast<Index>(m)];
    return UnitVector::normalized(base_.unitary() * padded);
}

ComplexMatrix code_projector_from_basis(const HaarScheme &scheme, const ComplexMatrix &basis_a) {
    const auto dim_a = static_cast<Index>(scheme.message_count());
    if (basis_a.rows() != dim_a || basis_a.cols() != dim_a) fail(ErrorCode::Shape, "basis must be 2^k x 2^k");
    const Index d = scheme.dim();
    ComplexMatrix proj = ComplexMatrix::Zero(d, d);
    for (Index j = 0; j < dim_a; ++j) {
        ComplexVector padded = ComplexVector::Zero(d);
        for (Index m = 0; m < dim_a; ++m) padded[scheme.layout(static_cast<std::size_t>(m))] = basis_a(m, j);
        ComplexVector psi = scheme.unitary() * padded;
        proj.noalias() += psi * psi.adjoint();
    }
    return proj;
}

QuantumDecodeResult quantum_decode(const QuantumMessageScheme &scheme, const ComplexMatrix &rho) {
    const HaarScheme &base = scheme.base();
    if (rho.rows() != base.dim() || rho.cols() != base.dim()) fail(ErrorCode::Shape, "state has the wrong dimension");
    require_density_matrix(rho);
    const auto dim_a = static_cast<Index>(base.message_count());
    // Codeword columns of U; the A-block of U* rho U restricted to B = 0.
    ComplexMatrix code_cols(base.dim(), dim_a);
    for (Index m = 0; m < dim_a; ++m) code_cols.col(m) = base.unitary().col(base.layout(static_cast<std::size_t>(m)));
    ComplexMatrix block = code_cols.adjoint() * rho * code_cols;
    QuantumDecodeResult out;
    out.accept_prob = std::max(0.0, block.trace().real());
    if (out.accept_prob > 1e-12) {
        ComplexMatrix post = block / out.accept_prob;
        out.post_state = 0.5 * (post + post.adjoint());
    }
    return out;
}

ClassicalSchemeTable::ClassicalSchemeTable(int n, int k, std::vector<std::vector<double>> enc, std::vector<Decoded> dec)
    : n_(n), k_(k), enc_(std::move(enc)), dec_(std::move(dec)) {
    if (n_ < 1 || n_ > 24) fail(ErrorCode::InvalidDimension, "codeword bits must be in [1, 24]", "n");
    if (k_ < 0 || k_ > n_) fail(ErrorCode::InvalidDimension, "message bits must be in [0, n]", "k");
    if (enc_.size() != message_count()) fail(ErrorCode::Shape, "enc_table needs one row per message", "enc_table");
    if (dec_.size() != codeword_count()) fail(ErrorCode::Shape, "dec_table needs one entry per codeword", "dec_table");
    for (std::size_t m = 0; m < enc_.size(); ++m) {
        const auto &row = enc_[m];
        if (row.size() != codeword_count()) fail(ErrorCode::Shape, "enc_table rows need 2^n probabilities", "enc_table");
        double total = 0.0;
        for (double p : row) {
            if (!(p >= 0.0) || !std::isfinite(p)) fail(ErrorCode::Domain, "encoding probabilities must be >= 0", "enc_table");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            fail(ErrorCode::Domain, "encoding distribution of message " + std::to_string(m) + " does not sum to 1",
                 "enc_table");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c] > 0.0 && dec_[c] != static_cast<std::uint32_t>(m)) {
                fail(ErrorCode::Domain,
                     "not complete: codeword " + std::to_string(c) + " of message " + std::to_string(m) +
                         " does not decode to it",
                     "dec_table");
            }
        }
    }
    for (const auto &entry : dec_) {
        if (entry && *entry >= message_count()) fail(ErrorCode::Domain, "decoded message out of range", "dec_table");
    }
}

ClassicalSchemeTable sample_classical_scheme(int n, int k, SeededRng &rng) {
    if (n < 1 || n > 16) fail(ErrorCode::InvalidDimension, "codeword bits must be in [1, 16]", "n");
    if (k < 0 || k > n) fail(ErrorCode::InvalidDimension, "message bits must be in [0, n]", "k");
    const std::size_t messages = std::size_t{1} << k;
    const std::size_t codewords = std::size_t{1} << n;
    std::vector<ClassicalSchemeTable::Decoded> dec(codewords);
    // Draw from messages + 1 labels, the last one meaning bottom.
    for (auto &entry : dec) {
        const auto label = rng.uniform_int(messages + 1);
        if (label < messages) entry = static_cast<std::uint32_t>(label);
    }
    // Give every message a codeword of its own by overwriting a random slot per message.
    std::vector<std::uint32_t> order(codewords);
    for (std::uint32_t c = 0; c < codewords; ++c) order[c] = c;
    for (std::size_t i = codewords - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(i + 1)]);
    for (std::size_t m = 0; m < messages; ++m) dec[order[m]] = static_cast<std::uint32_t>(m);

    std::vector<std::vector<double>> enc(messages, std::vector<double>(codewords, 0.0));
    for (std::size_t m = 0; m < messages; ++m) {
        double total = 0.0;
        for (std::size_t c = 0; c < codewords; ++c) {
            if (dec[c] && *dec[c] == m) {
                enc[m][c] = 0.1 + rng.uniform();
                total += enc[m][c];
            }
        }
        for (auto &p : enc[m]) p /= total;
    }
    return ClassicalSchemeTable(n, k, std::move(enc), std::move(dec));
}

BreakCertificate break_classical_scheme(const ClassicalSchemeTable &scheme) {
    if (scheme.message_count() < 2) fail(ErrorCode::NoVictim, "a single-message scheme has no victim message", "k");
    for (std::uint32_t m0 = 0; m0 < scheme.message_count(); ++m0) {
        const auto &row = scheme.enc()[m0];
        for (std::uint32_t c = 0; c < row.size(); ++c) {
            if (row[c] <= 0.0) continue;
            BreakCertificate cert;
            cert.constant = c;
            cert.source = m0;
            cert.victim = m0 == 0 ? 1 : 0;
            cert.wrong_decode_prob = replay_constant_tampering(scheme, c, cert.victim);
            return cert;
        }
    }
    fail(ErrorCode::Domain, "encoding table is empty");
}

double replay_constant_tampering(const ClassicalSchemeTable &scheme, std::uint32_t constant, std::uint32_t victim) {
    if (constant >= scheme.codeword_count()) fail(ErrorCode::Domain, "constant codeword out of range");
    if (victim >= scheme.message_count()) fail(ErrorCode::Domain, "victim message out of range");
    // Every codeword the victim might be encoded to is overwritten by the constant.
    const auto decoded = scheme.dec()[constant];
    double wrong = 0.0;
    for (double p : scheme.enc()[victim]) {
        if (decoded && *decoded != victim) wrong += p;
    }
    return wrong;
}

HadamardOutcome hadamard_scheme_probabilities(int n, int k, std::uint32_t y, std::uint32_t m) {
    if (n < 1 || n > 24) fail(ErrorCode::InvalidDimension, "n must be in [1, 24]", "n");
    if (k < 0 || k > n) fail(ErrorCode::Domain, "message bits must not exceed codeword bits", "k");
    const std::size_t dim = std::size_t{1} << n;
    if (y >= dim) fail(ErrorCode::Domain, "constant string out of range", "y");
    if (m >= (std::size_t{1} << k)) fail(ErrorCode::Domain, "message out of range", "m");

    // The decoder undoes H^{(x)n} (self-inverse) on the replaced codeword |y>.
    std::vector<double> amp(dim, 0.0);
    amp[y] = 1.0;
    for (std::size_t h = 1; h < dim; h <<= 1) {
        for (std::size_t i = 0; i < dim; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                double a = amp[j];
                double b = amp[j + h];
                amp[j] = a + b;
                amp[j + h] = a - b;
            }
        }
    }
    const double norm = std::pow(2.0, -0.5 * n);

    HadamardOutcome out;
    out.n = n;
    out.k = k;
    out.constant = y;
    out.message = m;
    const std::size_t messages = std::size_t{1} << k;
    const std::size_t pad = std::size_t{1} << (n - k);
    out.message_probs.resize(messages);
    double accepted = 0.0;
    for (std::size_t mp = 0; mp < messages; ++mp) {
        double a = amp[mp * pad] * norm;
        out.message_probs[mp] = a * a;
        accepted += a * a;
        if (mp != m) out.wrong_message += a * a;
    }
    out.reject = std::max(0.0, 1.0 - accepted);
    out.bound = std::pow(2.0, 2.0 * k - n);
    return out;
}

}  // namespace qtamper
