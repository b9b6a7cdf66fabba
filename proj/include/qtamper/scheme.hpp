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

#ifndef QTAMPER_SCHEME_HPP
#define QTAMPER_SCHEME_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qtamper/matrix.hpp"
#include "qtamper/rng.hpp"

namespace qtamper {

/// Encoding-decoding pair Enc_U(m) = U(|m>_A (x) |0>_B), Dec_U = "undo U,
/// measure B, reject unless B = 0".
///
/// d must be a power of two with 2^k <= d, so A (2^k) and B (d / 2^k) are
/// genuine tensor factors. The message occupies the high-order part of the
/// basis index: layout(m) = m * (d / 2^k).
class HaarScheme {
   public:
    /// Throws InvalidDimension for non-power-of-two d or 2^k > d, Domain if U is not unitary within 1e-10.
    HaarScheme(ComplexMatrix unitary, int k);

    /// Samples U from the Haar measure with the given stream.
    static HaarScheme sample(Index d, int k, SeededRng &rng);

    Index dim() const { return unitary_.rows(); }
    int message_bits() const { return k_; }
    std::size_t message_count() const { return std::size_t{1} << k_; }
    Index ancilla_dim() const { return dim() >> k_; }
    /// log2(d) / k; infinite for k = 0.
    double expansion_factor() const;
    const ComplexMatrix &unitary() const { return unitary_; }

    Index layout(std::size_t m) const;
    /// Column layout(m) of U. Throws Domain for m >= 2^k.
    UnitVector encode(std::size_t m) const;

   private:
    ComplexMatrix unitary_;
    int k_;
};

struct DecodeDistribution {
    std::vector<double> message;  ///< p(m') for m' in [0, 2^k)
    double reject = 0.0;          ///< p(bottom)
};

/// p(m') = <layout(m')| U* rho U |layout(m')>, p(bottom) = 1 - sum p(m').
/// Throws InvalidState unless rho is a density matrix within 1e-9.
DecodeDistribution decode_distribution(const HaarScheme &scheme, const ComplexMatrix &rho);

/// Haar scheme with quantum messages: the decoder measures {Pi_C, 1 - Pi_C}
/// with Pi_C = U (I_A (x) |0><0|_B) U*.
class QuantumMessageScheme {
   public:
    explicit QuantumMessageScheme(HaarScheme base);

    const HaarScheme &base() const { return base_; }
    const ComplexMatrix &code_projector() const { return code_projector_; }
    ComplexMatrix reject_projector() const { return identity(base_.dim()) - code_projector_; }

    /// U(|v>_A (x) |0>_B) for a message state v on C^{2^k}.
    UnitVector encode(const UnitVector &message) const;

   private:
    HaarScheme base_;
    ComplexMatrix code_projector_;
};

/// Pi_C built from an arbitrary orthonormal basis of A (columns of basis_a).
ComplexMatrix code_projector_from_basis(const HaarScheme &scheme, const ComplexMatrix &basis_a);

struct QuantumDecodeResult {
    double accept_prob = 0.0;
    /// Renormalized state on A conditioned on acceptance; absent when accept_prob <= 1e-12.
    std::optional<ComplexMatrix> post_state;
};

QuantumDecodeResult quantum_decode(const QuantumMessageScheme &scheme, const ComplexMatrix &rho);

/// Deterministic-decoder classical scheme over n-bit codewords and k-bit messages.
/// The decoder maps each codeword to a message or to bottom (nullopt).
class ClassicalSchemeTable {
   public:
    using Decoded = std::optional<std::uint32_t>;

    /// enc[m][c] = Pr[Enc(m) = c]. Validates normalization (1e-12) and completeness.
    ClassicalSchemeTable(int n, int k, std::vector<std::vector<double>> enc, std::vector<Decoded> dec);

    int codeword_bits() const { return n_; }
    int message_bits() const { return k_; }
    std::size_t message_count() const { return std::size_t{1} << k_; }
    std::size_t codeword_count() const { return std::size_t{1} << n_; }
    const std::vector<std::vector<double>> &enc() const { return enc_; }
    const std::vector<Decoded> &dec() const { return dec_; }

   private:
    int n_;
    int k_;
    std::vector<std::vector<double>> enc_;
    std::vector<Decoded> dec_;
};

/// Random complete scheme: every codeword decodes to a uniformly drawn
/// message or to bottom, each message owns at least one codeword and encodes
/// to its codewords with random weights.
ClassicalSchemeTable sample_classical_scheme(int n, int k, SeededRng &rng);

struct BreakCertificate {
    std::uint32_t constant = 0;      ///< codeword c used by the constant tampering f_c
    std::uint32_t source = 0;        ///< m0 with Pr[Enc(m0) = c] > 0, so Dec(c) = m0
    std::uint32_t victim = 0;        ///< m1 != m0 whose encodings are overwritten
    double wrong_decode_prob = 0.0;  ///< Pr[Dec(f_c(Enc(m1))) not in {m1, bottom}]
};

/// Constant-function attack against a complete classical scheme: picks the
/// first (m0, c) with Pr[Enc(m0) = c] > 0 and the first m1 != m0.
/// Throws NoVictim when there is a single message.
BreakCertificate break_classical_scheme(const ClassicalSchemeTable &scheme);

/// Replays f_c on Enc(m1) through the tables: Pr[Dec(c) not in {m1, bottom}].
double replay_constant_tampering(const ClassicalSchemeTable &scheme, std::uint32_t constant, std::uint32_t victim);

struct HadamardOutcome {
    int n = 0;
    int k = 0;
    std::uint32_t constant = 0;
    std::uint32_t message = 0;
    std::vector<double> message_probs;  ///< |<m', 0^{n-k}| H^{(x)n} |y>|^2
    double reject = 0.0;
    double wrong_message = 0.0;  ///< sum over m' != message
    double bound = 0.0;          ///< 2^{2k - n}
};

/// Exact decode distribution of the Hadamard scheme Enc(m) = H^{(x)n}|m, 0^{n-k}>
/// when the codeword is replaced by |y>. Evaluated on the state vector with a
/// fast Walsh-Hadamard transform. Throws Domain for k > n.
HadamardOutcome hadamard_scheme_probabilities(int n, int k, std::uint32_t y, std::uint32_t m);

}  // namespace qtamper

#endif
