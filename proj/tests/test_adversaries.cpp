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

#include <algorithm>
#include <cmath>
#include <map>

#include "qtamper/adversary.hpp"
#include "qtamper/error.hpp"
#include "qtamper/haar.hpp"

using namespace qtamper;

namespace {

std::size_t preimage_oracle(const std::vector<std::uint32_t> &table) {
    std::map<std::uint32_t, std::size_t> counts;
    for (auto y : table) ++counts[y];
    std::size_t best = 0;
    for (const auto &[y, c] : counts) best = std::max(best, c);
    return best;
}

ClassicalFunction random_function(int n, SeededRng &rng) {
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    for (auto &y : table) y = static_cast<std::uint32_t>(rng.uniform_int(table.size()));
    return ClassicalFunction(n, table);
}

ComplexMatrix basis_projector(Index d, Index i) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    p(i, i) = 1.0;
    return p;
}

}  // namespace

TEST(Lift, Examples) {
    const ClassicalFunction id(2, {0, 1, 2, 3});
    const QuantumChannel lid = lift_classical(id);
    EXPECT_EQ(lid.kraus_count(), 1u);
    EXPECT_LT(max_abs(lid.kraus()[0] - identity(4)), 1e-15);
    EXPECT_NEAR(entanglement_fidelity(lid), 1.0, 1e-14);
    EXPECT_EQ(min_kraus_rank(lid), 1);

    const ClassicalFunction constant(2, {0, 0, 0, 0});
    EXPECT_EQ(lift_classical(constant).kraus_count(), 4u);
    EXPECT_EQ(min_kraus_rank(lift_classical(constant)), 4);

    const ClassicalFunction pairs(2, {0, 0, 3, 3});
    const QuantumChannel lp = lift_classical(pairs);
    EXPECT_EQ(min_kraus_rank(lp), 2);
    EXPECT_EQ(pairs.fixed_point_count(), 2u);
    const double fe = entanglement_fidelity(lp);
    EXPECT_GE(fe, 0.125 - 1e-12);
    EXPECT_LE(fe, 0.25 + 1e-12);
}

TEST(Lift, ActsClassicallyExhaustive) {
    SeededRng rng(1, 0);
    for (int n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const ClassicalFunction f = random_function(n, rng);
            const QuantumChannel ch = lift_classical(f);
            EXPECT_TRUE(validate(ch).ok());
            const Index d = static_cast<Index>(f.domain_size());
            for (Index x = 0; x < d; ++x) {
                EXPECT_LT(max_abs(ch.apply(basis_projector(d, x)) - basis_projector(d, f(static_cast<std::uint32_t>(x)))), 1e-14);
            }
        }
    }
}

TEST(Lift, RankAndFidelitySandwich) {
    SeededRng rng(2, 0);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.uniform_int(4));
        const ClassicalFunction f = random_function(n, rng);
        const QuantumChannel ch = lift_classical(f);
        const int r = min_kraus_rank(ch);
        EXPECT_EQ(static_cast<std::size_t>(r), preimage_oracle(f.table()));
        const double fix = static_cast<double>(f.fixed_point_count());
        const double size2 = std::ldexp(1.0, 2 * n);
        const double fe = entanglement_fidelity(ch);
        EXPECT_GE(fe, fix * fix / (size2 * r) - 1e-10);
        EXPECT_LE(fe, fix * fix / size2 + 1e-10);
    }
}

TEST(Lift, FunctionValidation) {
    EXPECT_THROW(ClassicalFunction(2, {0, 1, 2}), Error);
    EXPECT_THROW(ClassicalFunction(2, {0, 1, 2, 4}), Error);
}

TEST(ClassicalStats, Examples) {
    const auto c = classical_stats(ClassicalFunction(3, std::vector<std::uint32_t>(8, 5)));
    EXPECT_DOUBLE_EQ(c.p_max, 1.0);
    EXPECT_DOUBLE_EQ(c.min_entropy, 0.0);
    const auto id = classical_stats(ClassicalFunction(2, {0, 1, 2, 3}));
    EXPECT_DOUBLE_EQ(id.p_fix, 1.0);
    const auto flip = classical_stats(ClassicalFunction(2, {3, 2, 1, 0}));
    EXPECT_DOUBLE_EQ(flip.p_max, 0.25);
    EXPECT_DOUBLE_EQ(flip.min_entropy, 2.0);
    EXPECT_DOUBLE_EQ(flip.p_fix, 0.0);
}

TEST(Replacement, Examples) {
    ComplexVector e0 = ComplexVector::Zero(2);
    e0[0] = 1.0;
    const QuantumChannel ch = replacement_channel(UnitVector(e0));
    EXPECT_LT(max_abs(ch.apply(basis_projector(2, 1)) - basis_projector(2, 0)), 1e-15);
    EXPECT_NEAR(entanglement_fidelity(ch), 0.25, 1e-15);
    SeededRng rng(3, 0);
    const UnitVector psi = sample_unit_vector(16, rng);
    const QuantumChannel r16 = replacement_channel(psi);
    EXPECT_EQ(min_kraus_rank(r16), 16);
    EXPECT_NEAR(entanglement_fidelity(r16), 1.0 / 256.0, 1e-14);
}

TEST(Replacement, AbsorbsEveryInput) {
    SeededRng rng(4, 0);
    const UnitVector psi = sample_unit_vector(5, rng);
    const QuantumChannel ch = replacement_channel(psi);
    for (int i = 0; i < 50; ++i) {
        const ComplexMatrix rho = sample_density_matrix(5, 1 + static_cast<Index>(rng.uniform_int(5)), rng);
        EXPECT_LT(max_abs(ch.apply(rho) - psi.projector()), 1e-10);
    }
}

TEST(Pauli, Channel) {
    const QuantumChannel xz = pauli_channel("XZ");
    EXPECT_EQ(xz.dim_in(), 4);
    EXPECT_NEAR(entanglement_fidelity(xz), 0.0, 1e-15);
    EXPECT_NEAR(entanglement_fidelity(pauli_channel("II")), 1.0, 1e-15);
    EXPECT_THROW(pauli_channel("XQ"), Error);
}

TEST(Profile, Ordering) {
    EXPECT_NO_THROW((ConstraintProfile{0.2, 0.6}.check()));
    EXPECT_THROW((ConstraintProfile{0.3, 0.6}.check()), Error);
    EXPECT_THROW((ConstraintProfile{0.1, 1.0}.check()), Error);
    const ConstraintProfile p{0.25, 0.8};
    EXPECT_NEAR(p.rank_threshold(16), std::pow(16.0, 0.2), 1e-12);
    EXPECT_NEAR(p.fidelity_threshold(16), 2.0 / std::pow(16.0, 0.4), 1e-12);
    EXPECT_NEAR(p.log2_size_threshold(16), 2.0, 1e-12);
}

TEST(Audit, IdentityFailsFidelity) {
    const AdversarialFamily fam("id", {FamilyMember::unitary(identity(16))});
    const FamilyAudit a = audit_family(fam, ConstraintProfile{0.2, 0.6});
    EXPECT_FALSE(a.fidelity.pass);
    EXPECT_FALSE(a.theorem_conditions_pass());
    EXPECT_TRUE(a.rank.pass);
}

TEST(Audit, HaarUnitariesTraceBound) {
    SeededRng rng(5, 0);
    std::vector<FamilyMember> members;
    for (int i = 0; i < 20; ++i) members.push_back(FamilyMember::unitary(sample_haar_unitary(16, rng)));
    const AdversarialFamily fam("haar", members);
    const FamilyAudit a = audit_family(fam, ConstraintProfile{0.1, 0.8});
    ASSERT_EQ(a.unitary_members.size(), 20u);
    for (const auto &u : a.unitary_members) {
        EXPECT_NEAR(u.threshold, std::sqrt(2.0) * 8.0, 1e-12);
        EXPECT_EQ(u.pass, u.abs_trace <= u.threshold * (1 + 1e-9));
    }
    EXPECT_EQ(fam.max_min_kraus_rank(), 1);
}

TEST(Audit, ReplacementFamilyFailsRank) {
    SeededRng rng(6, 0);
    std::vector<FamilyMember> members;
    for (int i = 0; i < 3; ++i) members.push_back(FamilyMember::replacement(sample_unit_vector(16, rng)));
    const AdversarialFamily fam("replacement", members);
    EXPECT_TRUE(fam.all_replacement());
    const FamilyAudit a = audit_family(fam, ConstraintProfile{0.1, 0.8});
    EXPECT_DOUBLE_EQ(a.rank.observed, 16.0);
    EXPECT_FALSE(a.rank.pass);
}

TEST(Audit, ClassicalMemberChecks) {
    const AdversarialFamily fam("flip", {FamilyMember::classical(ClassicalFunction(4, {15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0}))});
    const FamilyAudit a = audit_family(fam, ConstraintProfile{0.1, 0.5});
    ASSERT_EQ(a.classical_members.size(), 1u);
    EXPECT_TRUE(a.classical_members[0].pass);
    EXPECT_DOUBLE_EQ(a.classical_members[0].min_entropy_threshold, 2.0);
}

TEST(Audit, MonotoneUnderAddition) {
    SeededRng rng(7, 0);
    std::vector<FamilyMember> members;
    bool failed[3] = {false, false, false};
    const ConstraintProfile profile{0.2, 0.5};
    for (int i = 0; i < 12; ++i) {
        const int kind = static_cast<int>(rng.uniform_int(3));
        if (kind == 0) members.push_back(FamilyMember::unitary(sample_haar_unitary(16, rng)));
        if (kind == 1) members.push_back(FamilyMember::generic(sample_random_channel(16, 1 + rng.uniform_int(6), rng)));
        if (kind == 2) members.push_back(FamilyMember::unitary(identity(16)));
        const FamilyAudit a = audit_family(AdversarialFamily("grow", members), profile);
        const bool pass[3] = {a.size.pass, a.rank.pass, a.fidelity.pass};
        for (int c = 0; c < 3; ++c) {
            if (failed[c]) EXPECT_FALSE(pass[c]);
            failed[c] = failed[c] || !pass[c];
        }
    }
}

TEST(Family, Validation) {
    EXPECT_THROW(AdversarialFamily("empty", {}), Error);
    try {
        AdversarialFamily("mixed", {FamilyMember::unitary(identity(2)), FamilyMember::unitary(identity(4))});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Family);
    }
    try {
        AdversarialFamily("not-tp", {FamilyMember::generic(QuantumChannel(2, 2, {identity(2), identity(2)}))});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Family);
    }
}

TEST(Family, SharedRankCache) {
    const AdversarialFamily fam("dep", {FamilyMember::generic(completely_depolarizing_channel(4))});
    const AdversarialFamily copy = fam;
    EXPECT_EQ(fam.max_min_kraus_rank(), 16);
    EXPECT_EQ(copy.min_kraus_ranks().front(), 16);
}
