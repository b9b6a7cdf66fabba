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

#ifndef QTAMPER_EXPERIMENTS_HPP
#define QTAMPER_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qtamper/adversary.hpp"
#include "qtamper/channel.hpp"
#include "qtamper/scheme.hpp"

namespace qtamper {

enum class PairKind { OffDiagonal, Diagonal };

const char *pair_kind_name(PairKind kind);

struct OverlapSample {
    std::size_t s = 0;
    std::size_t t = 0;
    double value = 0.0;
};

/// X_st = <psi_t| Phi(|psi_s><psi_s|) |psi_t> with psi_m = Enc_U(m).
double exact_overlap(const HaarScheme &scheme, const QuantumChannel &ch, std::size_t s, std::size_t t);

/// E_U[X_st] in closed form: (d - d F_e)/(d^2 - 1) off the diagonal, (d^2 F_e + d)/(d^2 + d) on it.
double exact_first_moment(double fe, Index d, PairKind kind);

/// Upper bound on E_U[X_st^n] with the hidden constant set to c.
/// Diagonal pairs need fe > 0; throws Domain otherwise.
double higher_moment_bound(int rank, double fe, Index d, int n, PairKind kind, double c);

enum class MomentStatus { Pass, Fail, Inactive, Skipped };

const char *moment_status_name(MomentStatus status);

struct MomentReport {
    std::string channel_id;
    PairKind pair = PairKind::OffDiagonal;
    int order = 1;
    Index dim = 0;
    int k = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double fe = 0.0;
    int rank = 0;
    double empirical_mean = 0.0;
    double std_error = 0.0;
    /// exact value for order 1, the heuristic upper bound otherwise
    double reference = 0.0;
    bool reference_is_bound = false;
    bool heuristic = false;
    MomentStatus status = MomentStatus::Fail;
    std::string note;
    std::vector<OverlapSample> samples;

    /// Skipped and inactive reports do not count as failures.
    bool pass() const { return status != MomentStatus::Fail; }
};

inline constexpr std::size_t kMinMomentTrials = 1000;

/// Monte Carlo mean of X_st over Haar U against the exact closed form. Trial i
/// uses SeededRng(seed, i). Pass when |mean - exact| <= 4 SE (or 1e-12 when SE = 0).
MomentReport estimate_first_moment(const QuantumChannel &ch, Index d, int k, PairKind kind, std::size_t trials,
                                   std::uint64_t seed, std::string channel_id = {});

struct HigherMomentOptions {
    double constant = 4.0;
};

/// Empirical E[X_st^n] against the heuristic bound. The bound is marked
/// inactive when it exceeds 1, and the diagonal case is skipped for F_e = 0.
MomentReport estimate_higher_moment(const QuantumChannel &ch, Index d, int k, PairKind kind, int n, std::size_t trials,
                                    std::uint64_t seed, const HigherMomentOptions &options = {},
                                    std::string channel_id = {});

struct DeviationBound {
    double low_moment_term = 0.0;   ///< exp(...) part
    double high_moment_term = 0.0;  ///< e^theta (...)^theta0 part
    double value = 0.0;             ///< e^{-theta eps} C (low + high)
};

/// Tail bound on Pr_U[X_st >= eps]. Requires theta > 0 and 0 < theta0 <= sqrt(d);
/// the diagonal branch also needs fe > 0.
DeviationBound eval_deviation_bound(int rank, double fe, Index d, double epsilon, double theta, int theta0,
                                    PairKind kind, double c = 4.0);

struct BetaThreshold {
    double t = 0.0;
    double empirical = 0.0;
    double exact = 0.0;
    double std_error = 0.0;
    bool pass = false;
};

struct BetaLawReport {
    Index dim = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<BetaThreshold> thresholds;
    double ks_statistic = 0.0;
    double ks_p_value = 0.0;
    bool ks_pass = false;
    std::vector<double> samples;

    bool pass() const;
};

inline constexpr double kKsAlpha = 0.01;

/// |<v, U w>|^2 for v = e_0 and w the uniform superposition, against Beta(1, d - 1).
BetaLawReport beta_law_test(Index d, std::size_t trials, std::uint64_t seed, const std::vector<double> &thresholds);

struct SoundnessSample {
    double max_accept = 0.0;  ///< max over messages and members of Pr[not bottom]
    double min_accept = 0.0;
    std::size_t argmax_member = 0;
    std::size_t argmax_message = 0;
    /// replacement families only: max over members and m' of |<m', 0| U* |psi>|^2
    double max_replacement_overlap = 0.0;
};

struct SoundnessReport {
    Index dim = 0;
    int k = 0;
    std::size_t samples_requested = 0;
    std::uint64_t seed = 0;
    std::vector<SoundnessSample> samples;
    double mean_max_accept = 0.0;
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
    /// per-member E_U[Pr[not bottom]] = (2^k - 1) E_off + E_diag
    std::vector<double> member_expectations;
    double reference_level = 0.0;  ///< max of member_expectations
    bool replacement_family = false;
    /// min(1, |F| 2^k (1 - q)^{d-1}) at q = 95th percentile of the replacement overlaps
    double replacement_union_tail = 0.0;
    double replacement_q95 = 0.0;
};

/// Exact sweep: for each Haar U, max over messages and members of the
/// non-bottom probability sum_t X_mt. Throws InvalidDimension when 2^k >= d.
SoundnessReport soundness_sweep(const AdversarialFamily &family, Index d, int k, std::size_t n_unitaries,
                                std::uint64_t seed);

struct ContinuityPair {
    UnitVector first;
    UnitVector second;
};

struct ContinuityCheck {
    double z_first = 0.0;
    double z_second = 0.0;
    double lhs = 0.0;  ///< |Z_s - Z_s~|
    double rhs = 0.0;  ///< half the trace distance
    bool pass = false;
};

struct ContinuityReport {
    std::vector<ContinuityCheck> checks;
    double max_gap = 0.0;  ///< max of lhs - rhs
    bool pass() const;
};

inline constexpr double kContinuitySlack = 1e-10;

/// Z_phi = Tr[Pi_C Phi(|phi><phi|)].
double acceptance_probability(const QuantumMessageScheme &scheme, const QuantumChannel &ch, const UnitVector &phi);

ContinuityReport continuity_check(const QuantumMessageScheme &scheme, const QuantumChannel &ch,
                                  const std::vector<ContinuityPair> &pairs);

}  // namespace qtamper

#endif
