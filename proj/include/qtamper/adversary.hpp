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

#ifndef QTAMPER_ADVERSARY_HPP
#define QTAMPER_ADVERSARY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qtamper/channel.hpp"
#include "qtamper/matrix.hpp"

namespace qtamper {

/// f : {0,1}^n -> {0,1}^n as a lookup table.
class ClassicalFunction {
   public:
    ClassicalFunction(int n, std::vector<std::uint32_t> table);

    int bits() const { return n_; }
    std::size_t domain_size() const { return table_.size(); }
    std::uint32_t operator()(std::uint32_t x) const { return table_[x]; }
    const std::vector<std::uint32_t> &table() const { return table_; }

    /// max_y |f^-1(y)|
    std::size_t max_preimage() const;
    std::size_t fixed_point_count() const;

   private:
    int n_;
    std::vector<std::uint32_t> table_;
};

/// CPTP extension of f built from the collision-free partition: fibres
/// f^-1(y) are listed in ascending input order and block b takes the b-th
/// element of every fibre that has one. K_b = sum_{x in B_b} |f(x)><x|.
QuantumChannel lift_classical(const ClassicalFunction &f);

struct ClassicalStats {
    double p_max = 0.0;        ///< max_y |f^-1(y)| / 2^n
    double min_entropy = 0.0;  ///< -log2 p_max
    double p_fix = 0.0;        ///< |{x : f(x) = x}| / 2^n
};

ClassicalStats classical_stats(const ClassicalFunction &f);

/// Phi_psi(rho) = Tr[rho] |psi><psi| with Kraus operators |psi><i|.
QuantumChannel replacement_channel(const UnitVector &psi);

/// Unitary channel of a tensor product of single-qubit Paulis, e.g. "XZI".
QuantumChannel pauli_channel(const std::string &paulis);

enum class MemberKind { Generic, Unitary, Classical, Replacement };

struct FamilyMember {
    QuantumChannel channel;
    MemberKind kind = MemberKind::Generic;
    std::optional<ClassicalFunction> function;  ///< set for Classical members
    std::optional<UnitVector> state;            ///< set for Replacement members
    std::string label;

    static FamilyMember generic(QuantumChannel ch, std::string label = {});
    static FamilyMember unitary(const ComplexMatrix &v, std::string label = {});
    static FamilyMember classical(ClassicalFunction f, std::string label = {});
    static FamilyMember replacement(UnitVector psi, std::string label = {});
};

/// Finite adversarial family of channels on a common dimension d.
///
/// Size and max entanglement fidelity are computed at construction; the
/// maximal minimum Kraus rank is computed on first use (it can need a dD x dD
/// eigendecomposition) and cached. The cache is shared between copies.
class AdversarialFamily {
   public:
    /// Throws Family for an empty family, a dimension mismatch or a member failing validation.
    AdversarialFamily(std::string label, std::vector<FamilyMember> members, bool validate_members = true);

    const std::string &label() const { return label_; }
    const std::vector<FamilyMember> &members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    Index dim() const { return dim_; }

    double max_entanglement_fidelity() const { return max_fe_; }
    const std::vector<double> &entanglement_fidelities() const { return fe_; }
    int max_min_kraus_rank() const;
    const std::vector<int> &min_kraus_ranks() const;

    /// True when every member was built from a classical function.
    bool all_classical() const;
    bool all_replacement() const;

   private:
    std::string label_;
    std::vector<FamilyMember> members_;
    Index dim_ = 0;
    std::vector<double> fe_;
    double max_fe_ = 0.0;
    struct RankCache;
    std::shared_ptr<RankCache> ranks_;
};

/// Parameters 0 <= 2 alpha < delta < 1 and the thresholds they induce at dimension d.
struct ConstraintProfile {
    double alpha = 0.0;
    double delta = 0.5;

    /// Throws Domain unless 0 <= 2 alpha < delta < 1.
    void check() const;
    /// log2 of the size threshold: d^alpha.
    double log2_size_threshold(Index d) const;
    double rank_threshold(Index d) const;      ///< d^{1 - delta}
    double fidelity_threshold(Index d) const;  ///< 2 / d^{delta / 2}
};

inline constexpr double kAuditRelativeSlack = 1e-9;

struct ConditionVerdict {
    double threshold = 0.0;
    double observed = 0.0;
    bool pass = false;
};

struct UnitaryMemberCheck {
    std::size_t index = 0;
    double abs_trace = 0.0;
    double threshold = 0.0;  ///< sqrt(2) d^{3/4}
    bool pass = false;
};

struct ClassicalMemberCheck {
    std::size_t index = 0;
    double min_entropy = 0.0;
    double min_entropy_threshold = 0.0;  ///< n delta
    double p_fix = 0.0;
    double p_fix_threshold = 0.0;  ///< sqrt(2) 2^{-n delta / 4}
    bool pass = false;
};

struct FamilyAudit {
    ConstraintProfile profile;
    Index dim = 0;
    /// size compared in log2: log2 |F| <= d^alpha
    ConditionVerdict size;
    ConditionVerdict rank;
    ConditionVerdict fidelity;
    std::vector<UnitaryMemberCheck> unitary_members;
    std::vector<ClassicalMemberCheck> classical_members;
    bool theorem_conditions_pass() const { return size.pass && rank.pass && fidelity.pass; }
};

/// Checks the three family conditions (size, rank, entanglement fidelity) with a
/// 1e-9 relative slack, plus the per-member unitary trace bound and classical
/// min-entropy / fixed-point conditions where they apply.
FamilyAudit audit_family(const AdversarialFamily &family, const ConstraintProfile &profile);

}  // namespace qtamper

#endif
