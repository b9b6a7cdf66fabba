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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qtamper/adversary.hpp"
#include "qtamper/delta_net.hpp"
#include "qtamper/error.hpp"
#include "qtamper/experiments.hpp"
#include "qtamper/haar.hpp"

using namespace qtamper;

namespace {

// Trace of K*K minus |Tr K|^2 / d summed over Kraus operators, divided by d^2 - 1.
double off_diagonal_oracle(const QuantumChannel &ch) {
    const double d = static_cast<double>(ch.dim_in());
    double acc = 0.0;
    for (const auto &k : ch.kraus()) acc += std::real((k.adjoint() * k).trace()) - std::norm(k.trace()) / d;
    return acc / (d * d - 1.0);
}

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    return static_cast<ErrorCode>(0);
}

}  // namespace

TEST(Overlap, Examples) {
    SeededRng rng(1, 0);
    const HaarScheme scheme = HaarScheme::sample(8, 2, rng);
    const QuantumChannel id = identity_channel(8);
    const QuantumChannel dep = completely_depolarizing_channel(8);
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t t = 0; t < 4; ++t) {
            EXPECT_NEAR(exact_overlap(scheme, id, s, t), s == t ? 1.0 : 0.0, 1e-12);
            EXPECT_NEAR(exact_overlap(scheme, dep, s, t), 1.0 / 8.0, 1e-12);
        }
    }
    EXPECT_EQ(code_of([&] { exact_overlap(scheme, identity_channel(4), 0, 1); }), ErrorCode::Domain);
    EXPECT_EQ(code_of([&] { exact_overlap(scheme, id, 4, 0); }), ErrorCode::Domain);
}

TEST(Overlap, RowsSumWithRejection) {
    SeededRng rng(2, 0);
    for (int i = 0; i < 20; ++i) {
        const HaarScheme scheme = HaarScheme::sample(16, 2, rng);
        const QuantumChannel ch = sample_random_channel(16, 1 + rng.uniform_int(5), rng);
        for (std::size_t s = 0; s < 4; ++s) {
            const DecodeDistribution dist = decode_distribution(scheme, ch.apply(scheme.encode(s).projector()));
            double total = dist.reject;
            for (std::size_t t = 0; t < 4; ++t) {
                EXPECT_NEAR(dist.message[t], exact_overlap(scheme, ch, s, t), 1e-12);
                total += exact_overlap(scheme, ch, s, t);
            }
            EXPECT_NEAR(total, 1.0, 1e-10);
        }
    }
}

TEST(FirstMoment, ClosedFormMatchesKrausSum) {
    SeededRng rng(3, 0);
    for (int i = 0; i < 10; ++i) {
        const QuantumChannel ch = sample_random_channel(6, 1 + rng.uniform_int(6), rng);
        EXPECT_NEAR(exact_first_moment(entanglement_fidelity(ch), 6, PairKind::OffDiagonal), off_diagonal_oracle(ch),
                    1e-12);
    }
}

TEST(FirstMoment, IdentityExact) {
    const auto off = estimate_first_moment(identity_channel(8), 8, 2, PairKind::OffDiagonal, 1000, 1);
    EXPECT_EQ(off.reference, 0.0);
    EXPECT_LT(std::abs(off.empirical_mean), 1e-15);
    EXPECT_TRUE(off.pass());
    const auto diag = estimate_first_moment(identity_channel(8), 8, 2, PairKind::Diagonal, 1000, 1);
    EXPECT_NEAR(diag.reference, 1.0, 1e-15);
    EXPECT_TRUE(diag.pass());
}

TEST(FirstMoment, UnitaryTraceTwo) {
    ComplexMatrix v = ComplexMatrix::Zero(4, 4);
    v(0, 0) = 1.0;
    v(1, 1) = 1.0;
    v(2, 2) = Complex(0.0, 1.0);
    v(3, 3) = Complex(0.0, -1.0);
    const QuantumChannel ch = unitary_channel(v);
    EXPECT_NEAR(std::norm(v.trace()), 4.0, 1e-15);
    EXPECT_NEAR(exact_first_moment(entanglement_fidelity(ch), 4, PairKind::OffDiagonal), 0.2, 1e-14);
    const auto r = estimate_first_moment(ch, 4, 1, PairKind::OffDiagonal, 20000, 11);
    EXPECT_NEAR(r.reference, 0.2, 1e-14);
    EXPECT_TRUE(r.pass()) << r.empirical_mean << " +- " << r.std_error;
}

TEST(FirstMoment, RandomChannels) {
    SeededRng rng(4, 0);
    const Index dims[] = {4, 8, 16};
    for (int i = 0; i < 6; ++i) {
        const Index d = dims[i % 3];
        const QuantumChannel ch = sample_random_channel(d, 1 + rng.uniform_int(4), rng);
        for (PairKind kind : {PairKind::OffDiagonal, PairKind::Diagonal}) {
            const auto r = estimate_first_moment(ch, d, 1, kind, 4000, 100 + i);
            EXPECT_TRUE(r.pass()) << "d=" << d << " " << pair_kind_name(kind) << " " << r.empirical_mean << " vs "
                                  << r.reference << " se " << r.std_error;
        }
    }
}

TEST(FirstMoment, Preconditions) {
    EXPECT_EQ(code_of([] { estimate_first_moment(identity_channel(4), 4, 1, PairKind::Diagonal, 999, 1); }),
              ErrorCode::Domain);
    EXPECT_EQ(code_of([] { estimate_first_moment(identity_channel(4), 8, 1, PairKind::Diagonal, 1000, 1); }),
              ErrorCode::Domain);
}

TEST(FirstMoment, Deterministic) {
    const QuantumChannel ch = completely_depolarizing_channel(4);
    const auto a = estimate_first_moment(ch, 4, 1, PairKind::OffDiagonal, 1000, 9);
    const auto b = estimate_first_moment(ch, 4, 1, PairKind::OffDiagonal, 1000, 9);
    EXPECT_EQ(a.empirical_mean, b.empirical_mean);
    EXPECT_EQ(a.std_error, b.std_error);
}

TEST(HigherMoment, BoundExamples) {
    const double c = 4.0;
    // n = 1 is consistent with the first moment
    for (Index d : {4, 8, 16, 64}) {
        const double dd = static_cast<double>(d);
        EXPECT_GE(higher_moment_bound(1, 0.0, d, 1, PairKind::OffDiagonal, c), dd / (dd * dd - 1.0));
    }
    const double b64 = higher_moment_bound(1, 0.0, 64, 2, PairKind::OffDiagonal, c);
    EXPECT_NEAR(b64, (1 + 16 * c / 64) * std::pow(2.0 * 66.0 / 4096.0, 2), 1e-15);
    const double dep = higher_moment_bound(16, 1.0 / 16.0, 4, 2, PairKind::OffDiagonal, c);
    EXPECT_NEAR(dep, (1 + 4 * c) * 144.0, 1e-9);
    const double diag = higher_moment_bound(1, 0.25, 16, 1, PairKind::Diagonal, c);
    const double phi = 0.5;
    EXPECT_NEAR(diag, (1 + 4 * c / 16) * std::pow((phi * phi * 16 + 2) / (phi * 16), 2), 1e-12);
    EXPECT_EQ(code_of([] { higher_moment_bound(1, 0.0, 16, 1, PairKind::Diagonal, 4.0); }), ErrorCode::Domain);
}

TEST(HigherMoment, UnitaryRespectsBound) {
    SeededRng rng(5, 0);
    const QuantumChannel ch = unitary_channel(sample_haar_unitary(64, rng));
    const auto r = estimate_higher_moment(ch, 64, 1, PairKind::OffDiagonal, 2, 2000, 3);
    EXPECT_EQ(r.status, MomentStatus::Pass);
    EXPECT_TRUE(r.reference_is_bound);
    EXPECT_LE(r.empirical_mean, r.reference);
}

TEST(HigherMoment, StatusFlags) {
    const auto inactive = estimate_higher_moment(completely_depolarizing_channel(4), 4, 1, PairKind::OffDiagonal, 2, 1000, 1);
    EXPECT_EQ(inactive.status, MomentStatus::Inactive);
    EXPECT_TRUE(inactive.pass());
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const QuantumChannel traceless = unitary_channel(kron(z, identity(8)));
    const auto skipped = estimate_higher_moment(traceless, 16, 1, PairKind::Diagonal, 2, 1000, 1);
    EXPECT_EQ(skipped.status, MomentStatus::Skipped);
    EXPECT_FALSE(skipped.note.empty());
    EXPECT_EQ(code_of([] { estimate_higher_moment(identity_channel(4), 4, 1, PairKind::Diagonal, 5, 1000, 1); }),
              ErrorCode::UnsupportedOrder);
}

TEST(Deviation, MonotoneInEpsilon) {
    double last = INFINITY;
    for (double eps = 1.0; eps <= 5.0; eps += 0.5) {
        const double v = eval_deviation_bound(1, 0.0, 64, eps, 8.0, 8, PairKind::OffDiagonal).value;
        EXPECT_LT(v, last);
        last = v;
    }
}

TEST(Deviation, Example) {
    const double fe = 2.0 / 8.0;
    for (PairKind kind : {PairKind::OffDiagonal, PairKind::Diagonal}) {
        const DeviationBound b = eval_deviation_bound(1, fe, 64, 1.0, 8.0, 8, kind);
        EXPECT_TRUE(std::isfinite(b.low_moment_term));
        EXPECT_TRUE(std::isfinite(b.high_moment_term));
        EXPECT_NEAR(b.value, std::exp(-8.0) * 4.0 * (b.low_moment_term + b.high_moment_term), 1e-12 * b.value);
    }
    const double base = 8.0 * 72.0 / 4096.0;
    const DeviationBound off = eval_deviation_bound(1, fe, 64, 1.0, 8.0, 8, PairKind::OffDiagonal);
    EXPECT_NEAR(off.low_moment_term, std::exp(8.0 * base), 1e-12);
    EXPECT_NEAR(off.high_moment_term, std::exp(8.0) * std::pow(base, 8), 1e-12);
}

TEST(Deviation, Preconditions) {
    EXPECT_EQ(code_of([] { eval_deviation_bound(1, 0.0, 64, 1.0, 8.0, 9, PairKind::OffDiagonal); }), ErrorCode::Domain);
    EXPECT_EQ(code_of([] { eval_deviation_bound(1, 0.0, 64, 1.0, 0.0, 4, PairKind::OffDiagonal); }), ErrorCode::Domain);
    EXPECT_EQ(code_of([] { eval_deviation_bound(1, 0.0, 64, 1.0, 1.0, 4, PairKind::Diagonal); }), ErrorCode::Domain);
}

TEST(Deviation, DoublingTheta0) {
    for (int r : {8, 16, 32}) {
        for (int t0 = 1; 2 * t0 <= 8; t0 *= 2) {
            if (r * t0 * (64.0 + t0) / 4096.0 <= 1.0) continue;
            const double a = eval_deviation_bound(r, 0.0, 64, 1.0, 4.0, t0, PairKind::OffDiagonal).high_moment_term;
            const double b = eval_deviation_bound(r, 0.0, 64, 1.0, 4.0, 2 * t0, PairKind::OffDiagonal).high_moment_term;
            EXPECT_GE(b, a);
        }
    }
}

TEST(BetaLaw, Examples) {
    const auto d2 = beta_law_test(2, 10000, 1, {0.0, 0.5});
    EXPECT_DOUBLE_EQ(d2.thresholds[0].exact, 1.0);
    EXPECT_DOUBLE_EQ(d2.thresholds[1].exact, 0.5);
    EXPECT_TRUE(d2.pass());
    const auto d8 = beta_law_test(8, 10000, 2, {0.25});
    EXPECT_NEAR(d8.thresholds[0].exact, std::pow(0.75, 7), 1e-15);
    EXPECT_TRUE(d8.pass());
    EXPECT_EQ(d8.samples.size(), 10000u);
}

TEST(BetaLaw, KsAcrossDims) {
    for (Index d : {2, 4, 8}) {
        const auto r = beta_law_test(d, 10000, 40 + d, {0.1});
        EXPECT_GT(r.ks_p_value, kKsAlpha) << d;
    }
    EXPECT_EQ(code_of([] { beta_law_test(4, 10000, 1, {1.5}); }), ErrorCode::Domain);
}

TEST(Soundness, IdentityFamily) {
    const AdversarialFamily fam("id", {FamilyMember::unitary(identity(8))});
    const auto r = soundness_sweep(fam, 8, 2, 5, 1);
    ASSERT_EQ(r.samples.size(), 5u);
    for (const auto &s : r.samples) {
        EXPECT_NEAR(s.max_accept, 1.0, 1e-12);
        EXPECT_NEAR(s.min_accept, 1.0, 1e-12);
    }
}

TEST(Soundness, DepolarizingExact) {
    const AdversarialFamily fam("dep", {FamilyMember::generic(completely_depolarizing_channel(16))});
    for (int k = 1; k <= 3; ++k) {
        const auto r = soundness_sweep(fam, 16, k, 5, 2);
        for (const auto &s : r.samples) {
            EXPECT_NEAR(s.max_accept, std::ldexp(1.0, k) / 16.0, 1e-12);
            EXPECT_NEAR(s.min_accept, std::ldexp(1.0, k) / 16.0, 1e-12);
        }
    }
}

TEST(Soundness, MatchesExactOverlap) {
    SeededRng rng(7, 0);
    const QuantumChannel ch = sample_random_channel(8, 3, rng);
    const AdversarialFamily fam("one", {FamilyMember::generic(ch)});
    const auto r = soundness_sweep(fam, 8, 1, 3, 5);
    // rebuild the encoders the sweep used
    for (std::size_t i = 0; i < 3; ++i) {
        SeededRng urng(5, i);
        const HaarScheme scheme(sample_haar_unitary(8, urng), 1);
        double best = 0.0;
        for (std::size_t m = 0; m < 2; ++m) {
            best = std::max(best, exact_overlap(scheme, ch, m, 0) + exact_overlap(scheme, ch, m, 1));
        }
        EXPECT_NEAR(r.samples[i].max_accept, best, 1e-12);
    }
}

TEST(Soundness, ReferenceLevel) {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const AdversarialFamily fam("z", {FamilyMember::unitary(kron(z, identity(32)))});
    const auto r = soundness_sweep(fam, 64, 2, 2, 1);
    const double d = 64.0;
    EXPECT_NEAR(r.reference_level, 3.0 * d / (d * d - 1.0) + d / (d * d + d), 1e-12);
}

TEST(Soundness, Errors) {
    const AdversarialFamily fam("id", {FamilyMember::unitary(identity(4))});
    EXPECT_EQ(code_of([&] { soundness_sweep(fam, 4, 2, 1, 1); }), ErrorCode::InvalidDimension);
    EXPECT_EQ(code_of([&] { soundness_sweep(fam, 8, 1, 1, 1); }), ErrorCode::InvalidDimension);
}

TEST(Soundness, ReplacementTail) {
    SeededRng rng(8, 0);
    std::vector<FamilyMember> members;
    for (int i = 0; i < 4; ++i) members.push_back(FamilyMember::replacement(sample_unit_vector(16, rng)));
    const auto r = soundness_sweep(AdversarialFamily("rep", members), 16, 1, 10, 3);
    EXPECT_TRUE(r.replacement_family);
    EXPECT_GE(r.replacement_union_tail, 0.0);
    EXPECT_LE(r.replacement_union_tail, 1.0);
    for (const auto &s : r.samples) {
        EXPECT_GE(s.max_replacement_overlap, 0.0);
        EXPECT_LE(s.max_replacement_overlap, 1.0 + 1e-12);
    }
}

TEST(DeltaNetTest, Examples) {
    const DeltaNet one = build_delta_net(1, 0.3, 1);
    EXPECT_EQ(one.points.size(), 1u);
    EXPECT_DOUBLE_EQ(one.coverage_confidence, 1.0);
    EXPECT_DOUBLE_EQ(delta_net_size_ceiling(2, 1.0), 625.0);
    const DeltaNet two = build_delta_net(2, 0.5, 7);
    EXPECT_DOUBLE_EQ(two.coverage_confidence, 1.0);
    EXPECT_LE(static_cast<double>(two.points.size()), two.size_ceiling);
    EXPECT_LE(two.worst_probe_distance, 0.5);
}

TEST(DeltaNetTest, CoverageOracle) {
    const DeltaNet net = build_delta_net(3, 0.6, 3);
    SeededRng rng(999, 0);
    for (int i = 0; i < 2000; ++i) {
        const UnitVector probe = sample_unit_vector(3, rng);
        double best = 2.0;
        for (const auto &p : net.points) best = std::min(best, pure_trace_norm_distance(p, probe));
        EXPECT_LE(best, 0.6 + 0.05);
    }
}

TEST(DeltaNetTest, Errors) {
    EXPECT_EQ(code_of([] { build_delta_net(9, 0.5, 1); }), ErrorCode::SizeLimit);
    EXPECT_EQ(code_of([] { build_delta_net(2, 1.0, 1); }), ErrorCode::Domain);
    DeltaNetOptions tight;
    tight.rejection_streak = 1;
    tight.repair_probes = 0;
    EXPECT_EQ(code_of([&] { build_delta_net(4, 0.3, 1, tight); }), ErrorCode::NetConstruction);
}

TEST(Continuity, Cases) {
    SeededRng rng(9, 0);
    const QuantumMessageScheme scheme(HaarScheme::sample(16, 2, rng));
    const QuantumChannel ch = sample_random_channel(16, 3, rng);
    const UnitVector s = sample_unit_vector(16, rng);
    const auto same = continuity_check(scheme, ch, {{s, s}});
    EXPECT_NEAR(same.checks[0].lhs, 0.0, 1e-14);
    EXPECT_NEAR(same.checks[0].rhs, 0.0, 1e-7);
    const auto orth = continuity_check(scheme, ch, {{UnitVector::basis(16, 0), UnitVector::basis(16, 1)}});
    EXPECT_NEAR(orth.checks[0].rhs, 1.0, 1e-14);
    EXPECT_LE(orth.checks[0].lhs, 1.0);
    std::vector<ContinuityPair> pairs;
    for (int i = 0; i < 100; ++i) pairs.push_back({sample_unit_vector(16, rng), sample_unit_vector(16, rng)});
    EXPECT_TRUE(continuity_check(scheme, ch, pairs).pass());
}

TEST(Continuity, AcceptanceMatchesProjector) {
    SeededRng rng(10, 0);
    const QuantumMessageScheme scheme(HaarScheme::sample(8, 1, rng));
    const UnitVector phi = scheme.encode(sample_unit_vector(2, rng));
    EXPECT_NEAR(acceptance_probability(scheme, identity_channel(8), phi), 1.0, 1e-12);
    EXPECT_NEAR(acceptance_probability(scheme, completely_depolarizing_channel(8), phi), 0.25, 1e-12);
}
