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

#include "qtamper/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "qtamper/error.hpp"

namespace qtamper {

ClassicalFunction::ClassicalFunction(int n, std::vector<std::uint32_t> table) : n_(n), table_(std::move(table)) {
    if (n_ < 1 || n_ > 12) fail(ErrorCode::InvalidDimension, "classical functions are limited to 1 <= n <= 12 bits", "n");
    const std::size_t size = std::size_t{1} << n_;
    if (table_.size() != size) fail(ErrorCode::Shape, "table must have 2^n entries", "table");
    for (auto y : table_) {
        if (y >= size) fail(ErrorCode::Domain, "table entry out of range", "table");
    }
}

std::size_t ClassicalFunction::max_preimage() const {
    std::vector<std::size_t> counts(table_.size(), 0);
    for (auto y : table_) ++counts[y];
    return *std::max_element(counts.begin(), counts.end());
}

std::size_t ClassicalFunction::fixed_point_count() const {
    std::size_t fixed = 0;
    for (std::uint32_t x = 0; x < table_.size(); ++x) fixed += table_[x] == x;
    return fixed;
}

QuantumChannel lift_classical(const ClassicalFunction &f) {
    const auto d = static_cast<Index>(f.domain_size());
    // Position of x inside its fibre, counting inputs in ascending order.
    std::vector<std::size_t> seen(f.domain_size(), 0);
    std::vector<std::size_t> block_of(f.domain_size());
    for (std::uint32_t x = 0; x < f.domain_size(); ++x) block_of[x] = seen[f(x)]++;
    const std::size_t blocks = f.max_preimage();
    std::vector<ComplexMatrix> kraus(blocks, ComplexMatrix::Zero(d, d));
    for (std::uint32_t x = 0; x < f.domain_size(); ++x) kraus[block_of[x]](f(x), x) = 1.0;
    return QuantumChannel(d, d, std::move(kraus));
}

ClassicalStats classical_stats(const ClassicalFunction &f) {
    ClassicalStats s;
    const double size = static_cast<double>(f.domain_size());
    s.p_max = static_cast<double>(f.max_preimage()) / size;
    s.min_entropy = -std::log2(s.p_max);
    s.p_fix = static_cast<double>(f.fixed_point_count()) / size;
    return s;
}

QuantumChannel replacement_channel(const UnitVector &psi) {
    const Index d = psi.dim();
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) {
        ComplexMatrix k = ComplexMatrix::Zero(d, d);
        k.col(i) = psi.amplitudes();
        kraus.push_back(std::move(k));
    }
    return QuantumChannel(d, d, std::move(kraus));
}

QuantumChannel pauli_channel(const std::string &paulis) {
    if (paulis.empty() || paulis.size() > 12) fail(ErrorCode::InvalidArgument, "Pauli string must have 1..12 letters", "paulis");
    ComplexMatrix op = identity(1);
    for (char c : paulis) {
        ComplexMatrix p(2, 2);
        switch (c) {
            case 'I':
                p << 1, 0, 0, 1;
                break;
            case 'X':
                p << 0, 1, 1, 0;
                break;
            case 'Y':
                p << 0, Complex(0, -1), Complex(0, 1), 0;
                break;
            case 'Z':
                p << 1, 0, 0, -1;
                break;
            default:
                fail(ErrorCode::InvalidArgument, std::string("unknown Pauli letter '") + c + "'", "paulis");
        }
        op = kron(op, p);
    }
    return unitary_channel(op);
}

FamilyMember FamilyMember::generic(QuantumChannel ch, std::string label) {
    MemberKind kind = is_unitary_channel(ch) ? MemberKind::Unitary : MemberKind::Generic;
    return FamilyMember{std::move(ch), kind, std::nullopt, std::nullopt, std::move(label)};
}

FamilyMember FamilyMember::unitary(const ComplexMatrix &v, std::string label) {
    return FamilyMember{unitary_channel(v), MemberKind::Unitary, std::nullopt, std::nullopt, std::move(label)};
}

FamilyMember FamilyMember::classical(ClassicalFunction f, std::string label) {
    QuantumChannel ch = lift_classical(f);
    return FamilyMember{std::move(ch), MemberKind::Classical, std::move(f), std::nullopt, std::move(label)};
}

FamilyMember FamilyMember::replacement(UnitVector psi, std::string label) {
    QuantumChannel ch = replacement_channel(psi);
    return FamilyMember{std::move(ch), MemberKind::Replacement, std::nullopt, std::move(psi), std::move(label)};
}

struct AdversarialFamily::RankCache {
    std::once_flag once;
    std::vector<int> ranks;
    int max_rank = 0;
};

AdversarialFamily::AdversarialFamily(std::string label, std::vector<FamilyMember> members, bool validate_members)
    : label_(std::move(label)), members_(std::move(members)), ranks_(std::make_shared<RankCache>()) {
    if (members_.empty()) fail(ErrorCode::Family, "adversarial family is empty", "channels");
    dim_ = members_.front().channel.dim_in();
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const auto &ch = members_[i].channel;
        if (ch.dim_in() != dim_ || ch.dim_out() != dim_) {
            fail(ErrorCode::Family, "member " + std::to_string(i) + " is not a channel on dimension " + std::to_string(dim_),
                 "channels");
        }
        if (validate_members) {
            // Kraus form is CP by construction; trace preservation is the check that can fail.
            ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
            for (const auto &k : ch.kraus()) sum.noalias() += k.adjoint() * k;
            if (max_abs(sum - identity(dim_)) > kTraceTolerancePerDim * static_cast<double>(dim_)) {
                fail(ErrorCode::Family, "member " + std::to_string(i) + " is not trace preserving", "channels");
            }
        }
        fe_.push_back(entanglement_fidelity(ch));
    }
    max_fe_ = *std::max_element(fe_.begin(), fe_.end());
}

const std::vector<int> &AdversarialFamily::min_kraus_ranks() const {
    std::call_once(ranks_->once, [this] {
        for (const auto &m : members_) {
            int r = 0;
            if (m.kind == MemberKind::Unitary) {
                r = 1;
            } else {
                r = min_kraus_rank(m.channel);
            }
            ranks_->ranks.push_back(r);
        }
        ranks_->max_rank = *std::max_element(ranks_->ranks.begin(), ranks_->ranks.end());
    });
    return ranks_->ranks;
}

int AdversarialFamily::max_min_kraus_rank() const {
    min_kraus_ranks();
    return ranks_->max_rank;
}

bool AdversarialFamily::all_classical() const {
    return std::all_of(members_.begin(), members_.end(), [](const auto &m) { return m.kind == MemberKind::Classical; });
}

bool AdversarialFamily::all_replacement() const {
    return std::all_of(members_.begin(), members_.end(), [](const auto &m) { return m.kind == MemberKind::Replacement; });
}

void ConstraintProfile::check() const {
    if (!(alpha >= 0.0 && 2.0 * alpha < delta && delta < 1.0)) {
        fail(ErrorCode::Domain, "profile needs 0 <= 2 alpha < delta < 1", "alpha/delta");
    }
}

double ConstraintProfile::log2_size_threshold(Index d) const {
    return std::pow(static_cast<double>(d), alpha);
}

double ConstraintProfile::rank_threshold(Index d) const {
    return std::pow(static_cast<double>(d), 1.0 - delta);
}

double ConstraintProfile::fidelity_threshold(Index d) const {
    return 2.0 / std::pow(static_cast<double>(d), delta / 2.0);
}

namespace {

ConditionVerdict at_most(double observed, double threshold) {
    return {threshold, observed, observed <= threshold * (1.0 + kAuditRelativeSlack)};
}

}  // namespace

FamilyAudit audit_family(const AdversarialFamily &family, const ConstraintProfile &profile) {
    profile.check();
    FamilyAudit audit;
    audit.profile = profile;
    const Index d = family.dim();
    audit.dim = d;
    audit.size = at_most(std::log2(static_cast<double>(family.size())), profile.log2_size_threshold(d));
    audit.rank = at_most(static_cast<double>(family.max_min_kraus_rank()), profile.rank_threshold(d));
    audit.fidelity = at_most(family.max_entanglement_fidelity(), profile.fidelity_threshold(d));

    const double trace_bound = std::sqrt(2.0) * std::pow(static_cast<double>(d), 0.75);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto &m = family.members()[i];
        if (m.kind == MemberKind::Unitary) {
            UnitaryMemberCheck check;
            check.index = i;
            check.abs_trace = std::abs(m.channel.kraus().front().trace());
            check.threshold = trace_bound;
            check.pass = check.abs_trace <= trace_bound * (1.0 + kAuditRelativeSlack);
            audit.unitary_members.push_back(check);
        } else if (m.kind == MemberKind::Classical && m.function) {
            ClassicalStats stats = classical_stats(*m.function);
            const double n = m.function->bits();
            ClassicalMemberCheck check;
            check.index = i;
            check.min_entropy = stats.min_entropy;
            check.min_entropy_threshold = n * profile.delta;
            check.p_fix = stats.p_fix;
            check.p_fix_threshold = std::sqrt(2.0) * std::pow(2.0, -n * profile.delta / 4.0);
            check.pass = check.min_entropy >= check.min_entropy_threshold * (1.0 - kAuditRelativeSlack) &&
                         check.p_fix <= check.p_fix_threshold * (1.0 + kAuditRelativeSlack);
            audit.classical_members.push_back(check);
        }
    }
    return audit;
}

}  // namespace qtamper
