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

#ifndef QTAMPER_CHANNEL_HPP
#define QTAMPER_CHANNEL_HPP

#include <vector>

#include "qtamper/matrix.hpp"
#include "qtamper/rng.hpp"

namespace qtamper {

class ChoiMatrix;

/// Linear map X -> sum_i K_i X K_i* from B(C^d) to B(C^D), held in Kraus form.
///
/// Construction checks shapes and finiteness only; use validate() for the
/// CP/TP verdict. Immutable once built.
class QuantumChannel {
   public:
    QuantumChannel(Index dim_in, Index dim_out, std::vector<ComplexMatrix> kraus);

    /// Channel whose Kraus operators are read off the Choi matrix spectrum
    /// (see canonical_kraus). Throws Domain if the Choi matrix is not PSD.
    static QuantumChannel from_choi(const ChoiMatrix &choi);

    Index dim_in() const { return dim_in_; }
    Index dim_out() const { return dim_out_; }
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }
    std::size_t kraus_count() const { return kraus_.size(); }

    ComplexMatrix apply(const ComplexMatrix &rho) const;
    /// Phi(|psi><psi|) without forming the input projector.
    ComplexMatrix apply_pure(const ComplexVector &psi) const;

   private:
    Index dim_in_;
    Index dim_out_;
    std::vector<ComplexMatrix> kraus_;
};

/// J(Phi) = sum_ij Phi(|i><j|) (x) |i><j|: output factor first, input second,
/// so entry ((a, i), (b, j)) is <a|Phi(|i><j|)|b>.
class ChoiMatrix {
   public:
    ChoiMatrix(Index dim_in, Index dim_out, ComplexMatrix matrix);

    Index dim_in() const { return dim_in_; }
    Index dim_out() const { return dim_out_; }
    const ComplexMatrix &matrix() const { return matrix_; }

    /// Tr over the output factor; equals I_d for trace-preserving maps.
    ComplexMatrix partial_trace_output() const;

   private:
    Index dim_in_;
    Index dim_out_;
    ComplexMatrix matrix_;
};

struct ChannelVerdict {
    bool cp_ok = false;
    bool tp_ok = false;
    /// ||sum_i K_i* K_i - I||_max
    double tp_residual = 0.0;
    double choi_min_eigenvalue = 0.0;
    double choi_max_eigenvalue = 0.0;
    bool ok() const { return cp_ok && tp_ok; }
};

inline constexpr double kTraceTolerancePerDim = 1e-9;
inline constexpr double kCpTolerance = 1e-9;

/// cp_ok iff lambda_min(J) >= -1e-9 lambda_max(J); tp_ok iff
/// ||sum K*K - I||_max <= 1e-9 d.
///
/// The Choi spectrum is obtained from whichever of J (dD x dD) or the Kraus
/// Gram matrix G_kl = Tr[K_k* K_l] (r x r) is smaller; the two share their
/// nonzero eigenvalues, and J has dD - r extra zeros when r < dD.
ChannelVerdict validate(const QuantumChannel &ch);

ChoiMatrix choi_of(const QuantumChannel &ch);

/// Nonzero part of the Choi spectrum, descending, with the rank threshold applied
/// by the caller. See validate() for how it is computed.
std::vector<double> choi_spectrum(const QuantumChannel &ch);

/// tau = (d D) * machine-epsilon * lambda_max(J).
double rank_threshold(Index dim_in, Index dim_out, double lambda_max);

/// Numerical rank of J(Phi) with threshold rank_threshold().
int min_kraus_rank(const QuantumChannel &ch);

/// Kraus operators sqrt(lambda) * reshape(v) for the eigenpairs of J above the
/// rank threshold, reshaped so K(a, i) = v[a d + i]. Ordered by descending
/// eigenvalue; ties broken by lexicographic comparison of the phase-fixed
/// eigenvectors (first entry of modulus > 1e-12 made real positive).
std::vector<ComplexMatrix> canonical_kraus(const ChoiMatrix &choi);

/// F_e = (1/d^2) sum_i |Tr K_i|^2. Throws Domain for non-square channels.
double entanglement_fidelity(const QuantumChannel &ch);

/// <Omega|(Phi (x) id)(|Omega><Omega|)|Omega> with |Omega> = d^{-1/2} sum_i |ii>,
/// evaluated on the vectorized maximally entangled state. Independent route
/// to entanglement_fidelity, used as its cross-check.
double entanglement_fidelity_omega(const QuantumChannel &ch);

/// V = sum_k K_k (x) |k>_E, a (D e) x d isometry with output factor first.
class StinespringIsometry {
   public:
    StinespringIsometry(Index dim_in, Index dim_out, Index dim_env, ComplexMatrix isometry);

    Index dim_in() const { return dim_in_; }
    Index dim_out() const { return dim_out_; }
    Index dim_env() const { return dim_env_; }
    const ComplexMatrix &isometry() const { return isometry_; }

    /// Tr_E[V rho V*].
    ComplexMatrix apply(const ComplexMatrix &rho) const;

   private:
    Index dim_in_;
    Index dim_out_;
    Index dim_env_;
    ComplexMatrix isometry_;
};

StinespringIsometry stinespring_of(const QuantumChannel &ch);

QuantumChannel identity_channel(Index d);
QuantumChannel unitary_channel(const ComplexMatrix &v);
/// rho -> Tr[rho] I/d with Kraus operators |i><j| / sqrt(d).
QuantumChannel completely_depolarizing_channel(Index d);
/// Random channel from the first d columns of a Haar unitary on C^d (x) C^rank.
QuantumChannel sample_random_channel(Index d, Index rank, SeededRng &rng);

/// True when the channel has one Kraus operator and it is unitary within tol.
bool is_unitary_channel(const QuantumChannel &ch, double tol = 1e-9);

}  // namespace qtamper

#endif
