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

#include "qtamper/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "qtamper/error.hpp"
#include "qtamper/haar.hpp"
#include "qtamper/stats.hpp"

namespace qtamper {

namespace {

// Fidelities below this are treated as zero when the diagonal bound divides by phi.
constexpr double kZeroFidelity = 1e-14;

bool is_power_of_two(Index d) { return d > 0 && (d & (d - 1)) == 0; }

void check_layout(Index d, int k) {
    if (!is_power_of_two(d)) fail(ErrorCode::InvalidDimension, "d must be a power of two", "d");
    if (k < 0 || k > 30 || (Index{1} << k) > d) fail(ErrorCode::InvalidDimension, "need 2^k <= d", "k");
}

void check_channel_dim(const QuantumChannel &ch, Index d) {
    if (ch.dim_in() != d || ch.dim_out() != d) {
        fail(ErrorCode::Domain, "channel acts on dimension " + std::to_string(ch.dim_in()) + ", expected " + std::to_string(d),
             "channel");
    }
}

std::pair<std::size_t, std::size_t> pair_indices(PairKind kind, int k) {
    if (kind == PairKind::Diagonal) return {0, 0};
    if (k < 1) fail(ErrorCode::InvalidDimension, "off-diagonal pairs need k >= 1", "k");
    return {0, 1};
}

// sum_i |<a| K_i |b>|^2
double kraus_overlap(const QuantumChannel &ch, const ComplexVector &a, const ComplexVector &b) {
    double x = 0.0;
    for (const auto &k : ch.kraus()) x += std::norm(a.dot(k * b));
    return x;
}

struct Sampled {
    std::vector<double> values;
    MeanEstimate estimate;
};

Sampled sample_overlaps(const QuantumChannel &ch, Index d, int k, PairKind kind, int power, std::size_t trials,
                        std::uint64_t seed) {
    const auto [s, t] = pair_indices(kind, k);
    const Index stride = d >> k;
    Sampled out;
    out.values = parallel_trials(trials, seed, [&, s = s, t = t](std::size_t, SeededRng &rng) {
        const ComplexMatrix u = sample_haar_unitary(d, rng);
        const ComplexVector a = u.col(static_cast<Index>(t) * stride);
        const ComplexVector b = u.col(static_cast<Index>(s) * stride);
        return std::pow(kraus_overlap(ch, a, b), power);
    });
    out.estimate = estimate_mean(out.values);
    return out;
}

MomentReport base_report(const QuantumChannel &ch, Index d, int k, PairKind kind, int order, std::size_t trials,
                         std::uint64_t seed, std::string channel_id) {
    check_layout(d, k);
    check_channel_dim(ch, d);
    pair_indices(kind, k);
    MomentReport r;
    r.channel_id = std::move(channel_id);
    r.pair = kind;
    r.order = order;
    r.dim = d;
    r.k = k;
    r.trials = trials;
    r.seed = seed;
    r.fe = entanglement_fidelity(ch);
    return r;
}

void attach_samples(MomentReport &r, const Sampled &sampled, int k) {
    const auto [s, t] = pair_indices(r.pair, k);
    r.samples.reserve(sampled.values.size());
    for (double v : sampled.values) r.samples.push_back({s, t, v});
    r.empirical_mean = std::clamp(sampled.estimate.mean, 0.0, 1.0);
    r.std_error = sampled.estimate.std_error;
}

}  // namespace

const char *pair_kind_name(PairKind kind) { return kind == PairKind::Diagonal ? "diagonal" : "off-diagonal"; }

const char *moment_status_name(MomentStatus status) {
    switch (status) {
        case MomentStatus::Pass:
            return "pass";
        case MomentStatus::Fail:
            return "fail";
        case MomentStatus::Inactive:
            return "inactive";
        case MomentStatus::Skipped:
            return "skipped";
    }
    return "unknown";
}

double exact_overlap(const HaarScheme &scheme, const QuantumChannel &ch, std::size_t s, std::size_t t) {
    check_channel_dim(ch, scheme.dim());
    if (s >= scheme.message_count() || t >= scheme.message_count()) {
        fail(ErrorCode::Domain, "message index out of range", "s/t");
    }
    const UnitVector psi_s = scheme.encode(s);
    const UnitVector psi_t = scheme.encode(t);
    const ComplexMatrix out = ch.apply(psi_s.projector());
    return std::real(psi_t.amplitudes().dot(out * psi_t.amplitudes()));
}

double exact_first_moment(double fe, Index d, PairKind kind) {
    const double dd = static_cast<double>(d);
    if (kind == PairKind::Diagonal) return (dd * dd * fe + dd) / (dd * dd + dd);
    if (d < 2) fail(ErrorCode::InvalidDimension, "off-diagonal pairs need d >= 2", "d");
    return (dd - dd * fe) / (dd * dd - 1.0);
}

double higher_moment_bound(int rank, double fe, Index d, int n, PairKind kind, double c) {
    if (n < 1) fail(ErrorCode::Domain, "moment order must be positive", "order");
    const double dd = static_cast<double>(d);
    const double nn = n;
    const double prefactor = 1.0 + c * 4.0 * nn * nn / dd;
    if (kind == PairKind::OffDiagonal) return prefactor * std::pow(rank * nn * (dd + nn) / (dd * dd), nn);
    if (!(fe > kZeroFidelity)) fail(ErrorCode::Domain, "diagonal bound is undefined for F_e = 0", "channel");
    const double phi = std::sqrt(fe);
    return prefactor * std::pow(std::sqrt(static_cast<double>(rank)) * (fe * dd + 2.0 * nn) / (phi * dd), 2.0 * nn);
}

MomentReport estimate_first_moment(const QuantumChannel &ch, Index d, int k, PairKind kind, std::size_t trials,
                                   std::uint64_t seed, std::string channel_id) {
    if (trials < kMinMomentTrials) fail(ErrorCode::Domain, "need at least 1000 trials", "trials");
    MomentReport r = base_report(ch, d, k, kind, 1, trials, seed, std::move(channel_id));
    r.reference = exact_first_moment(r.fe, d, kind);
    const Sampled sampled = sample_overlaps(ch, d, k, kind, 1, trials, seed);
    attach_samples(r, sampled, k);
    const double gap = std::abs(sampled.estimate.mean - r.reference);
    // floor for channels whose X_st is constant up to rounding
    const double tolerance = std::max(4.0 * sampled.estimate.std_error, 1e-12);
    r.status = gap <= tolerance ? MomentStatus::Pass : MomentStatus::Fail;
    return r;
}

MomentReport estimate_higher_moment(const QuantumChannel &ch, Index d, int k, PairKind kind, int n, std::size_t trials,
                                    std::uint64_t seed, const HigherMomentOptions &options, std::string channel_id) {
    if (n < 1 || n > 4) fail(ErrorCode::UnsupportedOrder, "moment order must lie in 1..4", "order");
    if (trials < kMinMomentTrials) fail(ErrorCode::Domain, "need at least 1000 trials", "trials");
    MomentReport r = base_report(ch, d, k, kind, n, trials, seed, std::move(channel_id));
    r.heuristic = true;
    r.reference_is_bound = true;
    r.rank = min_kraus_rank(ch);
    const Sampled sampled = sample_overlaps(ch, d, k, kind, n, trials, seed);
    attach_samples(r, sampled, k);
    if (kind == PairKind::Diagonal && !(r.fe > kZeroFidelity)) {
        r.status = MomentStatus::Skipped;
        r.note = "diagonal bound divides by phi and is undefined for F_e = 0";
        return r;
    }
    r.reference = higher_moment_bound(r.rank, r.fe, d, n, kind, options.constant);
    if (r.reference > 1.0) {
        r.status = MomentStatus::Inactive;
        r.note = "bound exceeds 1 and carries no information";
    } else {
        r.status = r.empirical_mean <= r.reference ? MomentStatus::Pass : MomentStatus::Fail;
    }
    return r;
}

DeviationBound eval_deviation_bound(int rank, double fe, Index d, double epsilon, double theta, int theta0,
                                    PairKind kind, double c) {
    if (!(theta > 0.0)) fail(ErrorCode::Domain, "theta must be positive", "theta");
    if (theta0 <= 0 || static_cast<double>(theta0) > std::sqrt(static_cast<double>(d))) {
        fail(ErrorCode::Domain, "need 0 < theta0 <= sqrt(d)", "theta0");
    }
    if (rank < 1) fail(ErrorCode::Domain, "rank must be positive", "rank");
    const double dd = static_cast<double>(d);
    const double t0 = theta0;
    DeviationBound b;
    if (kind == PairKind::OffDiagonal) {
        const double base = rank * t0 * (dd + t0) / (dd * dd);
        b.low_moment_term = std::exp(theta * base);
        b.high_moment_term = std::exp(theta) * std::pow(base, t0);
    } else {
        if (!(fe > kZeroFidelity)) fail(ErrorCode::Domain, "diagonal bound is undefined for F_e = 0", "fe");
        const double phi = std::sqrt(fe);
        const double spread = fe * dd + 2.0 * t0;
        b.low_moment_term = std::exp(rank * theta * spread * spread / (dd * dd * fe));
        b.high_moment_term = std::exp(theta) * std::pow(std::sqrt(static_cast<double>(rank)) * spread / (phi * dd), 2.0 * t0);
    }
    b.value = std::exp(-theta * epsilon) * c * (b.low_moment_term + b.high_moment_term);
    return b;
}

bool BetaLawReport::pass() const {
    return ks_pass && std::all_of(thresholds.begin(), thresholds.end(), [](const auto &t) { return t.pass; });
}

BetaLawReport beta_law_test(Index d, std::size_t trials, std::uint64_t seed, const std::vector<double> &thresholds) {
    if (d < 2) fail(ErrorCode::InvalidDimension, "need d >= 2", "d");
    check_matrix_size(static_cast<double>(d), static_cast<double>(d), "d");
    if (trials < kMinMomentTrials) fail(ErrorCode::Domain, "need at least 1000 trials", "trials");
    for (double t : thresholds) {
        if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::Domain, "thresholds must lie in [0, 1]", "thresholds");
    }
    BetaLawReport r;
    r.dim = d;
    r.trials = trials;
    r.seed = seed;
    const ComplexVector w = ComplexVector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
    r.samples = parallel_trials(trials, seed, [&](std::size_t, SeededRng &rng) {
        const ComplexMatrix u = sample_haar_unitary(d, rng);
        return std::norm((u.row(0) * w).value());
    });
    const double n = static_cast<double>(trials);
    const double b = static_cast<double>(d - 1);
    for (double t : thresholds) {
        BetaThreshold bt;
        bt.t = t;
        bt.exact = std::pow(1.0 - t, b);
        bt.empirical = static_cast<double>(std::count_if(r.samples.begin(), r.samples.end(), [t](double x) { return x >= t; })) / n;
        bt.std_error = std::sqrt(bt.exact * (1.0 - bt.exact) / n);
        const double tolerance = bt.std_error > 0.0 ? 4.0 * bt.std_error : 1e-12;
        bt.pass = std::abs(bt.empirical - bt.exact) <= tolerance;
        r.thresholds.push_back(bt);
    }
    r.ks_statistic = ks_statistic(r.samples, [b](double x) { return beta_1b_cdf(x, b); });
    r.ks_p_value = ks_p_value(r.ks_statistic, trials);
    r.ks_pass = r.ks_p_value > kKsAlpha;
    return r;
}

SoundnessReport soundness_sweep(const AdversarialFamily &family, Index d, int k, std::size_t n_unitaries,
                                std::uint64_t seed) {
    check_layout(d, k);
    if ((Index{1} << k) >= d) fail(ErrorCode::InvalidDimension, "need 2^k < d so the code has an ancilla", "k");
    if (family.dim() != d) fail(ErrorCode::InvalidDimension, "family dimension differs from d", "d");
    if (n_unitaries < 1) fail(ErrorCode::InvalidArgument, "need at least one Haar sample", "samples");

    const Index messages = Index{1} << k;
    const Index stride = d >> k;
    const auto &members = family.members();

    SoundnessReport r;
    r.dim = d;
    r.k = k;
    r.samples_requested = n_unitaries;
    r.seed = seed;
    r.replacement_family = family.all_replacement();

    auto rows = parallel_trials_multi(n_unitaries, seed, [&](std::size_t, SeededRng &rng) {
        const ComplexMatrix u = sample_haar_unitary(d, rng);
        ComplexMatrix codes(d, messages);
        for (Index m = 0; m < messages; ++m) codes.col(m) = u.col(m * stride);
        const ComplexMatrix codes_adj = codes.adjoint();
        double best = -1.0;
        double worst = 2.0;
        double best_member = 0;
        double best_message = 0;
        double best_overlap = 0.0;
        for (std::size_t f = 0; f < members.size(); ++f) {
            Eigen::VectorXd accept = Eigen::VectorXd::Zero(messages);
            for (const auto &kr : members[f].channel.kraus()) {
                const ComplexMatrix c = codes_adj * (kr * codes);
                accept += c.cwiseAbs2().colwise().sum().transpose();
            }
            for (Index m = 0; m < messages; ++m) {
                if (accept[m] > best) {
                    best = accept[m];
                    best_member = static_cast<double>(f);
                    best_message = static_cast<double>(m);
                }
                worst = std::min(worst, accept[m]);
            }
            if (members[f].state) {
                const Eigen::VectorXd o = (codes_adj * members[f].state->amplitudes()).cwiseAbs2();
                best_overlap = std::max(best_overlap, o.maxCoeff());
            }
        }
        return std::vector<double>{best, worst, best_member, best_message, best_overlap};
    });

    std::vector<double> maxima;
    std::vector<double> overlaps;
    for (const auto &row : rows) {
        SoundnessSample s;
        s.max_accept = row[0];
        s.min_accept = row[1];
        s.argmax_member = static_cast<std::size_t>(row[2]);
        s.argmax_message = static_cast<std::size_t>(row[3]);
        s.max_replacement_overlap = row[4];
        r.samples.push_back(s);
        maxima.push_back(s.max_accept);
        overlaps.push_back(s.max_replacement_overlap);
    }
    r.mean_max_accept = estimate_mean(maxima).mean;
    r.q05 = quantile(maxima, 0.05);
    r.q50 = quantile(maxima, 0.5);
    r.q95 = quantile(maxima, 0.95);

    const double off = static_cast<double>(messages - 1);
    for (double fe : family.entanglement_fidelities()) {
        r.member_expectations.push_back(off * exact_first_moment(fe, d, PairKind::OffDiagonal) +
                                        exact_first_moment(fe, d, PairKind::Diagonal));
    }
    r.reference_level = *std::max_element(r.member_expectations.begin(), r.member_expectations.end());

    if (r.replacement_family) {
        r.replacement_q95 = quantile(overlaps, 0.95);
        const double tail = static_cast<double>(family.size()) * static_cast<double>(messages) *
                            std::pow(1.0 - r.replacement_q95, static_cast<double>(d - 1));
        r.replacement_union_tail = std::min(1.0, tail);
    }
    return r;
}

bool ContinuityReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
}

double acceptance_probability(const QuantumMessageScheme &scheme, const QuantumChannel &ch, const UnitVector &phi) {
    check_channel_dim(ch, scheme.base().dim());
    if (phi.dim() != scheme.base().dim()) fail(ErrorCode::Domain, "state dimension differs from the scheme", "state");
    const ComplexMatrix out = ch.apply_pure(phi.amplitudes());
    return std::real((scheme.code_projector() * out).trace());
}

ContinuityReport continuity_check(const QuantumMessageScheme &scheme, const QuantumChannel &ch,
                                  const std::vector<ContinuityPair> &pairs) {
    ContinuityReport r;
    r.max_gap = -1.0;
    for (const auto &p : pairs) {
        ContinuityCheck c;
        c.z_first = acceptance_probability(scheme, ch, p.first);
        c.z_second = acceptance_probability(scheme, ch, p.second);
        c.lhs = std::abs(c.z_first - c.z_second);
        c.rhs = 0.5 * pure_trace_norm_distance(p.first, p.second);
        c.pass = c.lhs <= c.rhs + kContinuitySlack;
        r.max_gap = std::max(r.max_gap, c.lhs - c.rhs);
        r.checks.push_back(c);
    }
    return r;
}

}  // namespace qtamper
