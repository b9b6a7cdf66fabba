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

#include "qtamper/commands.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qtamper/combinatorics.hpp"
#include "qtamper/delta_net.hpp"
#include "qtamper/error.hpp"
#include "qtamper/experiments.hpp"
#include "qtamper/haar.hpp"
#include "qtamper/stats.hpp"

namespace qtamper {

namespace {

// Streams used to build channels and families, far above any trial index.
constexpr std::uint64_t kBuildStream = std::uint64_t{1} << 62;

class Params {
   public:
    explicit Params(const Json &config) : in_(config) {
        if (!in_.is_object()) fail(ErrorCode::Parse, "config must be a JSON object", "config");
    }

    std::int64_t integer(const std::string &key, std::optional<std::int64_t> fallback, std::int64_t lo, std::int64_t hi) {
        const Json *v = lookup(key);
        std::int64_t x = 0;
        if (!v) {
            if (!fallback) missing(key);
            x = *fallback;
        } else if (v->is_number_integer()) {
            x = v->get<std::int64_t>();
        } else {
            fail(ErrorCode::Parse, "expected an integer", key);
        }
        if (x < lo || x > hi) {
            fail(ErrorCode::Domain, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", key);
        }
        resolved[key] = x;
        return x;
    }

    std::uint64_t seed() {
        const Json *v = lookup("seed");
        std::uint64_t x = 0;
        if (v) {
            if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<std::int64_t>() < 0)) {
                fail(ErrorCode::Parse, "expected a non-negative integer", "seed");
            }
            x = v->get<std::uint64_t>();
        }
        resolved["seed"] = x;
        return x;
    }

    double real(const std::string &key, std::optional<double> fallback) {
        const Json *v = lookup(key);
        double x = 0.0;
        if (!v) {
            if (!fallback) missing(key);
            x = *fallback;
        } else if (v->is_number()) {
            x = v->get<double>();
        } else {
            fail(ErrorCode::Parse, "expected a number", key);
        }
        if (!std::isfinite(x)) fail(ErrorCode::Domain, "must be finite", key);
        resolved[key] = x;
        return x;
    }

    std::string text(const std::string &key, std::optional<std::string> fallback) {
        const Json *v = lookup(key);
        std::string x;
        if (!v) {
            if (!fallback) missing(key);
            x = *fallback;
        } else if (v->is_string()) {
            x = v->get<std::string>();
        } else {
            fail(ErrorCode::Parse, "expected a string", key);
        }
        resolved[key] = x;
        return x;
    }

    std::optional<std::string> optional_text(const std::string &key) {
        if (!lookup(key)) return std::nullopt;
        return text(key, std::nullopt);
    }

    std::optional<std::int64_t> optional_integer(const std::string &key, std::int64_t lo, std::int64_t hi) {
        if (!lookup(key)) return std::nullopt;
        return integer(key, std::nullopt, lo, hi);
    }

    /// A JSON list of numbers or a comma separated string.
    std::vector<double> reals(const std::string &key, std::vector<double> fallback) {
        const Json *v = lookup(key);
        std::vector<double> xs;
        if (!v) {
            xs = std::move(fallback);
        } else if (v->is_number()) {
            xs.push_back(v->get<double>());
        } else if (v->is_array()) {
            for (const auto &e : *v) {
                if (!e.is_number()) fail(ErrorCode::Parse, "expected numbers", key);
                xs.push_back(e.get<double>());
            }
        } else if (v->is_string()) {
            std::stringstream ss(v->get<std::string>());
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    std::size_t used = 0;
                    xs.push_back(std::stod(item, &used));
                    if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
                } catch (const std::exception &) {
                    fail(ErrorCode::Parse, "cannot read '" + item + "' as a number", key);
                }
            }
        } else {
            fail(ErrorCode::Parse, "expected a list of numbers", key);
        }
        resolved[key] = xs;
        return xs;
    }

    void finish() const {
        for (const auto &item : in_.items()) {
            if (!seen_.count(item.key())) fail(ErrorCode::InvalidArgument, "unknown parameter", item.key());
        }
    }

    Json resolved = Json::object();

   private:
    const Json *lookup(const std::string &key) {
        seen_.insert(key);
        auto it = in_.find(key);
        return it == in_.end() ? nullptr : &*it;
    }

    [[noreturn]] static void missing(const std::string &key) {
        fail(ErrorCode::InvalidArgument, "missing required parameter", key);
    }

    const Json &in_;
    std::set<std::string> seen_;
};

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Csv {
   public:
    void row(std::uint64_t seed, std::size_t trial, const std::string &s, const std::string &t, double value) {
        if (body_.empty()) body_ = "seed,trial,s,t,value\n";
        body_ += std::to_string(seed) + "," + std::to_string(trial) + "," + s + "," + t + "," + format_double(value) + "\n";
    }
    std::string take() { return std::move(body_); }

   private:
    std::string body_;
};

Json envelope(const std::string &command, const Params &params, std::uint64_t seed) {
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"library_version", QTAMPER_VERSION},
                {"rng_transform_version", SeededRng::kTransformVersion},
                {"master_seed", seed},
                {"config", params.resolved}};
}

void finalize(CommandResult &out, const Json &result, Json verdict) {
    out.pass = verdict.at("pass").get<bool>();
    out.report["result"] = result;
    out.report["verdict"] = std::move(verdict);
}

bool starts_with(const std::string &s, const std::string &prefix) { return s.rfind(prefix, 0) == 0; }

std::int64_t parse_count(const std::string &text, const std::string &field) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size() || v < 1) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception &) {
        fail(ErrorCode::Parse, "expected a positive integer after ':' in '" + text + "'", field);
    }
}

int log2_exact(Index d, const std::string &field) {
    if (d < 2 || (d & (d - 1)) != 0) fail(ErrorCode::InvalidDimension, "this builtin needs d a power of two >= 2", field);
    int n = 0;
    while ((Index{1} << n) < d) ++n;
    return n;
}

ComplexMatrix traceless_unitary(Index d, SeededRng &rng) {
    // W diag(omega^j) W* with omega a primitive d-th root of unity.
    const ComplexMatrix w = sample_haar_unitary(d, rng);
    ComplexVector phases(d);
    for (Index j = 0; j < d; ++j) phases[j] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(d));
    return w * phases.asDiagonal() * w.adjoint();
}

ClassicalFunction random_function(int n, SeededRng &rng) {
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    for (auto &y : table) y = static_cast<std::uint32_t>(rng.uniform_int(table.size()));
    return ClassicalFunction(n, std::move(table));
}

constexpr const char *kChannelBuiltins =
    "identity, depolarizing, haar-unitary, traceless-unitary, random:R, pauli:XYZ, classical-random, replacement-random";

/// Builtin names need d; anything else is read as a channel file.
FamilyMember member_from_spec(const std::string &spec, std::optional<Index> d, SeededRng &rng, const std::string &field) {
    auto need_d = [&]() -> Index {
        if (!d) fail(ErrorCode::InvalidArgument, "builtin channel '" + spec + "' needs --d", "d");
        return *d;
    };
    if (spec == "identity") return FamilyMember::unitary(identity(need_d()), spec);
    if (spec == "depolarizing") return FamilyMember::generic(completely_depolarizing_channel(need_d()), spec);
    if (spec == "haar-unitary") return FamilyMember::unitary(sample_haar_unitary(need_d(), rng), spec);
    if (spec == "traceless-unitary") {
        if (need_d() < 2) fail(ErrorCode::InvalidDimension, "traceless unitaries need d >= 2", "d");
        return FamilyMember::unitary(traceless_unitary(*d, rng), spec);
    }
    if (starts_with(spec, "random:")) {
        const auto r = parse_count(spec.substr(7), field);
        return FamilyMember::generic(sample_random_channel(need_d(), r, rng), spec);
    }
    if (starts_with(spec, "pauli:")) {
        FamilyMember m = FamilyMember::unitary(pauli_channel(spec.substr(6)).kraus().front(), spec);
        if (d && m.channel.dim_in() != *d) fail(ErrorCode::InvalidDimension, "Pauli string length does not match d", field);
        return m;
    }
    if (spec == "classical-random") return FamilyMember::classical(random_function(log2_exact(need_d(), field), rng), spec);
    if (spec == "replacement-random") return FamilyMember::replacement(sample_unit_vector(need_d(), rng), spec);
    if (spec.empty()) fail(ErrorCode::InvalidArgument, std::string("empty channel; use a file or one of ") + kChannelBuiltins, field);
    FamilyMember m = FamilyMember::generic(channel_from_json(load_json_file(spec), field), spec);
    if (d && (m.channel.dim_in() != *d || m.channel.dim_out() != *d)) {
        fail(ErrorCode::InvalidDimension, "channel in " + spec + " does not act on dimension " + std::to_string(*d), field);
    }
    return m;
}

/// Builtins: identity, depolarizing, traceless-unitaries:N, replacement:N, classical-random:N; otherwise a family file.
AdversarialFamily family_from_spec(const std::string &spec, std::optional<Index> d, std::uint64_t seed) {
    SeededRng rng(seed, kBuildStream + 1);
    auto build = [&](const std::string &single, std::int64_t count) {
        std::vector<FamilyMember> members;
        for (std::int64_t i = 0; i < count; ++i) members.push_back(member_from_spec(single, d, rng, "family"));
        return AdversarialFamily(spec, std::move(members), false);
    };
    if (spec == "identity" || spec == "depolarizing") return build(spec, 1);
    const std::vector<std::pair<std::string, std::string>> counted = {{"traceless-unitaries:", "traceless-unitary"},
                                                                     {"replacement:", "replacement-random"},
                                                                     {"classical-random:", "classical-random"},
                                                                     {"haar-unitaries:", "haar-unitary"}};
    for (const auto &[prefix, single] : counted) {
        if (starts_with(spec, prefix)) return build(single, parse_count(spec.substr(prefix.size()), "family"));
    }
    const std::filesystem::path path(spec);
    AdversarialFamily family = family_from_json(load_json_file(path), path.parent_path());
    if (d && family.dim() != *d) fail(ErrorCode::InvalidDimension, "family does not act on dimension " + std::to_string(*d), "family");
    return family;
}

PairKind parse_pair(const std::string &s) {
    if (s == "off" || s == "off-diagonal") return PairKind::OffDiagonal;
    if (s == "diag" || s == "diagonal") return PairKind::Diagonal;
    fail(ErrorCode::InvalidArgument, "expected off or diag", "pair");
}

const char *kind_name(MemberKind k) {
    switch (k) {
        case MemberKind::Generic:
            return "generic";
        case MemberKind::Unitary:
            return "unitary";
        case MemberKind::Classical:
            return "classical";
        case MemberKind::Replacement:
            return "replacement";
    }
    return "unknown";
}

constexpr std::int64_t kMaxDim = 4096;
constexpr std::int64_t kMaxTrials = 10'000'000;

CommandResult cmd_audit_family(const Json &config) {
    Params p(config);
    const std::string spec = p.text("family", std::nullopt);
    const double alpha = p.real("alpha", 0.2);
    const double delta = p.real("delta", 0.6);
    const auto d = p.optional_integer("d", 1, kMaxDim);
    const std::uint64_t seed = p.seed();
    p.finish();
    ConstraintProfile profile{alpha, delta};
    profile.check();
    const AdversarialFamily family = family_from_spec(spec, d, seed);
    const FamilyAudit audit = audit_family(family, profile);

    CommandResult out;
    out.report = envelope("audit-family", p, seed);
    Json result = audit_to_json(audit);
    Json members = Json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto &m = family.members()[i];
        members.push_back(Json{{"index", i},
                               {"label", m.label},
                               {"kind", kind_name(m.kind)},
                               {"entanglement_fidelity", family.entanglement_fidelities()[i]},
                               {"min_kraus_rank", family.min_kraus_ranks()[i]}});
    }
    result["family_label"] = family.label();
    result["family_size"] = family.size();
    result["members"] = std::move(members);
    finalize(out, result,
             Json{{"pass", audit.theorem_conditions_pass()},
                  {"size", audit.size.pass},
                  {"rank", audit.rank.pass},
                  {"entanglement_fidelity", audit.fidelity.pass}});
    return out;
}

CommandResult cmd_moments(const Json &config) {
    Params p(config);
    const std::string spec = p.text("channel", std::nullopt);
    const Index d = p.integer("d", std::nullopt, 1, kMaxDim);
    const int k = static_cast<int>(p.integer("k", 1, 0, 12));
    const int order = static_cast<int>(p.integer("order", 1, 1, 4));
    const PairKind pair = parse_pair(p.text("pair", "off"));
    const auto trials = static_cast<std::size_t>(p.integer("trials", 10000, 1000, kMaxTrials));
    const double constant = p.real("constant", 4.0);
    const std::uint64_t seed = p.seed();
    p.finish();
    SeededRng build(seed, kBuildStream);
    const FamilyMember member = member_from_spec(spec, d, build, "channel");

    const MomentReport r = order == 1
                               ? estimate_first_moment(member.channel, d, k, pair, trials, seed, spec)
                               : estimate_higher_moment(member.channel, d, k, pair, order, trials, seed,
                                                        HigherMomentOptions{constant}, spec);
    CommandResult out;
    out.report = envelope("moments", p, seed);
    Json result{{"channel_id", r.channel_id},
                {"pair", pair_kind_name(r.pair)},
                {"order", r.order},
                {"d", r.dim},
                {"k", r.k},
                {"trials", r.trials},
                {"entanglement_fidelity", r.fe},
                {"empirical_mean", r.empirical_mean},
                {"std_error", r.std_error},
                {"reference", r.reference},
                {"reference_kind", r.reference_is_bound ? "heuristic-bound" : "exact"},
                {"status", moment_status_name(r.status)}};
    if (r.reference_is_bound) result["min_kraus_rank"] = r.rank;
    if (!r.note.empty()) result["note"] = r.note;
    Csv csv;
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        csv.row(seed, i, std::to_string(r.samples[i].s), std::to_string(r.samples[i].t), r.samples[i].value);
    }
    out.csv = csv.take();
    // Bound verdicts are informative only and never fail the run.
    finalize(out, result,
             Json{{"pass", r.heuristic ? true : r.pass()}, {"heuristic", r.heuristic}, {"status", moment_status_name(r.status)}});
    return out;
}

CommandResult cmd_soundness(const Json &config) {
    Params p(config);
    const std::string spec = p.text("family", std::nullopt);
    const Index d = p.integer("d", std::nullopt, 2, kMaxDim);
    const int k = static_cast<int>(p.integer("k", 1, 0, 12));
    const auto samples = static_cast<std::size_t>(p.integer("samples", 20, 1, 100000));
    const std::string mode = p.text("mode", "exact");
    const std::uint64_t seed = p.seed();
    p.finish();
    if (mode != "exact") fail(ErrorCode::InvalidArgument, "only exact mode is available", "mode");
    const AdversarialFamily family = family_from_spec(spec, d, seed);
    const SoundnessReport r = soundness_sweep(family, d, k, samples, seed);

    CommandResult out;
    out.report = envelope("soundness", p, seed);
    Json rows = Json::array();
    Csv csv;
    bool valid = true;
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const auto &s = r.samples[i];
        Json row{{"max_accept", s.max_accept},
                 {"min_accept", s.min_accept},
                 {"argmax_member", s.argmax_member},
                 {"argmax_message", s.argmax_message}};
        if (r.replacement_family) row["max_replacement_overlap"] = s.max_replacement_overlap;
        rows.push_back(std::move(row));
        csv.row(seed, i, std::to_string(s.argmax_message), "", s.max_accept);
        valid = valid && s.min_accept >= -1e-10 && s.max_accept <= 1.0 + 1e-10;
    }
    Json result{{"family_label", family.label()},
                {"family_size", family.size()},
                {"d", r.dim},
                {"k", r.k},
                {"samples", std::move(rows)},
                {"mean_max_accept", r.mean_max_accept},
                {"q05", r.q05},
                {"q50", r.q50},
                {"q95", r.q95},
                {"member_expectations", r.member_expectations},
                {"reference_level", r.reference_level}};
    if (r.replacement_family) {
        result["replacement_q95"] = r.replacement_q95;
        result["replacement_union_tail"] = r.replacement_union_tail;
    }
    out.csv = csv.take();
    // Distributions are reported, not judged; the verdict only checks the probabilities are valid.
    finalize(out, result, Json{{"pass", valid}, {"probabilities_valid", valid}});
    return out;
}

CommandResult cmd_beta_check(const Json &config) {
    Params p(config);
    const Index d = p.integer("d", std::nullopt, 2, kMaxDim);
    const auto trials = static_cast<std::size_t>(p.integer("trials", 10000, 1000, kMaxTrials));
    const std::vector<double> thresholds = p.reals("thresholds", {0.0, 0.1, 0.25, 0.5, 0.75});
    const std::uint64_t seed = p.seed();
    p.finish();
    const BetaLawReport r = beta_law_test(d, trials, seed, thresholds);

    CommandResult out;
    out.report = envelope("beta-check", p, seed);
    Json rows = Json::array();
    for (const auto &t : r.thresholds) {
        rows.push_back(Json{{"t", t.t}, {"empirical", t.empirical}, {"exact", t.exact}, {"std_error", t.std_error}, {"pass", t.pass}});
    }
    Json result{{"d", r.dim},
                {"trials", r.trials},
                {"thresholds", std::move(rows)},
                {"ks_statistic", r.ks_statistic},
                {"ks_p_value", r.ks_p_value},
                {"ks_alpha", kKsAlpha}};
    Csv csv;
    for (std::size_t i = 0; i < r.samples.size(); ++i) csv.row(seed, i, "0", "0", r.samples[i]);
    out.csv = csv.take();
    finalize(out, result, Json{{"pass", r.pass()}, {"ks_pass", r.ks_pass}});
    return out;
}

CommandResult cmd_combinatorics(const Json &config) {
    Params p(config);
    const int n_max = static_cast<int>(p.integer("n-max", kMaxCombinatoricsDegree, 1, kMaxCombinatoricsDegree));
    const auto instances = static_cast<std::size_t>(p.integer("swap-instances", 100, 0, 100000));
    const std::uint64_t seed = p.seed();
    p.finish();
    const CombinatoricsReport r = combinatorics_suite(n_max);

    // Generalized swap trick against the explicit tensor product.
    auto errors = parallel_trials(instances, seed, [](std::size_t, SeededRng &rng) {
        const int n = 1 + static_cast<int>(rng.uniform_int(4));
        const Index d = 2 + static_cast<Index>(rng.uniform_int(2));
        std::vector<int> mapping(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) mapping[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i) std::swap(mapping[static_cast<std::size_t>(i)], mapping[rng.uniform_int(i + 1)]);
        const Permutation pi(mapping);
        std::vector<ComplexMatrix> mats;
        ComplexMatrix product = identity(1);
        for (int i = 0; i < n; ++i) {
            ComplexMatrix m(d, d);
            for (Index r = 0; r < d; ++r) {
                for (Index c = 0; c < d; ++c) m(r, c) = rng.complex_normal();
            }
            product = kron(product, m);
            mats.push_back(std::move(m));
        }
        const Complex direct = (product * tensor_permutation_operator(pi, d)).trace();
        const Complex fast = trace_permuted_product(pi, mats);
        return std::abs(direct - fast) / std::max(1.0, std::abs(direct));
    });
    const double worst = errors.empty() ? 0.0 : *std::max_element(errors.begin(), errors.end());
    const bool swap_pass = worst <= 1e-10;

    CommandResult out;
    out.report = envelope("combinatorics-selftest", p, seed);
    Json fixed = Json::array();
    for (const auto &f : r.fixed_points) {
        fixed.push_back(Json{{"n", f.n}, {"permutations", f.permutations}, {"violations", f.violations}, {"min_slack", f.min_slack}});
    }
    Json parity = Json::array();
    for (const auto &c : r.parity_alternating) {
        parity.push_back(Json{{"n", c.n}, {"x", c.x}, {"subset_size", c.subset_size}, {"sum", c.sum}, {"expected", c.expected}, {"pass", c.pass}});
    }
    Json stirling = Json::array();
    for (const auto &s : r.stirling) {
        stirling.push_back(Json{{"n", s.n}, {"x", s.x}, {"stirling_sum", s.stirling_sum}, {"rising", s.rising}, {"pass", s.pass}});
    }
    Json result{{"fixed_point_bound", std::move(fixed)},
                {"parity_alternating_sum", std::move(parity)},
                {"stirling_identity", std::move(stirling)},
                {"swap_trick", Json{{"instances", instances}, {"max_relative_error", worst}, {"pass", swap_pass}}}};
    finalize(out, result, Json{{"pass", r.pass && swap_pass}, {"combinatorics", r.pass}, {"swap_trick", swap_pass}});
    return out;
}

CommandResult cmd_break_classical(const Json &config) {
    Params p(config);
    const auto scheme_path = p.optional_text("scheme");
    const auto tables = p.integer("tables", 50, 1, 100000);
    const int n_max = static_cast<int>(p.integer("n-max", 6, 1, 12));
    const int k_max = static_cast<int>(p.integer("k-max", 3, 1, 12));
    const std::uint64_t seed = p.seed();
    p.finish();

    std::vector<ClassicalSchemeTable> schemes;
    if (scheme_path) {
        schemes.push_back(classical_scheme_from_json(load_json_file(*scheme_path), "scheme"));
    } else {
        for (std::int64_t i = 0; i < tables; ++i) {
            SeededRng rng(seed, static_cast<std::uint64_t>(i));
            const int n = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_max)));
            const int k = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(std::min(n, k_max))));
            schemes.push_back(sample_classical_scheme(n, k, rng));
        }
    }

    CommandResult out;
    out.report = envelope("break-classical", p, seed);
    Json rows = Json::array();
    Csv csv;
    bool all = true;
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        const BreakCertificate cert = break_classical_scheme(schemes[i]);
        const double replay = replay_constant_tampering(schemes[i], cert.constant, cert.victim);
        const bool ok = std::abs(replay - 1.0) <= 1e-12 && std::abs(cert.wrong_decode_prob - 1.0) <= 1e-12;
        all = all && ok;
        rows.push_back(Json{{"n", schemes[i].codeword_bits()},
                            {"k", schemes[i].message_bits()},
                            {"constant", cert.constant},
                            {"source", cert.source},
                            {"victim", cert.victim},
                            {"wrong_decode_prob", cert.wrong_decode_prob},
                            {"replayed_wrong_decode_prob", replay},
                            {"pass", ok}});
        csv.row(seed, i, std::to_string(cert.victim), std::to_string(cert.source), replay);
    }
    out.csv = csv.take();
    finalize(out, Json{{"schemes", std::move(rows)}}, Json{{"pass", all}});
    return out;
}

CommandResult cmd_hadamard(const Json &config) {
    Params p(config);
    const int n = static_cast<int>(p.integer("n", 4, 1, 16));
    const int k = static_cast<int>(p.integer("k", 2, 0, n));
    const auto y_given = p.optional_integer("y", 0, (std::int64_t{1} << n) - 1);
    const auto m = static_cast<std::uint32_t>(p.integer("m", 0, 0, (std::int64_t{1} << k) - 1));
    const std::uint64_t seed = p.seed();
    p.finish();

    const double expected = std::ldexp(1.0, -n);
    const double wrong_expected = static_cast<double>((std::int64_t{1} << k) - 1) * expected;
    double max_dev = 0.0;
    double max_wrong = 0.0;
    double bound = 0.0;
    Csv csv;
    Json detail = Json::array();
    const std::uint32_t y_lo = y_given ? static_cast<std::uint32_t>(*y_given) : 0;
    const std::uint32_t y_hi = y_given ? y_lo + 1 : (std::uint32_t{1} << n);
    const bool emit_rows = y_given || n <= 6;
    for (std::uint32_t y = y_lo; y < y_hi; ++y) {
        const HadamardOutcome o = hadamard_scheme_probabilities(n, k, y, m);
        bound = o.bound;
        for (std::size_t j = 0; j < o.message_probs.size(); ++j) {
            max_dev = std::max(max_dev, std::abs(o.message_probs[j] - expected));
            if (emit_rows) csv.row(seed, y, std::to_string(m), std::to_string(j), o.message_probs[j]);
        }
        max_wrong = std::max(max_wrong, o.wrong_message);
        if (y_given) {
            detail.push_back(Json{{"y", y}, {"message_probs", o.message_probs}, {"reject", o.reject}, {"wrong_message", o.wrong_message}});
        }
    }
    const bool exact = max_dev <= 1e-12;
    const bool within = max_wrong <= bound + 1e-12;

    CommandResult out;
    out.report = envelope("hadamard-demo", p, seed);
    Json result{{"n", n},
                {"k", k},
                {"message", m},
                {"constants_checked", y_hi - y_lo},
                {"per_message_probability", expected},
                {"max_deviation", max_dev},
                {"max_wrong_message_prob", max_wrong},
                {"expected_wrong_message_prob", wrong_expected},
                {"bound", bound}};
    if (y_given) result["detail"] = std::move(detail);
    out.csv = csv.take();
    finalize(out, result, Json{{"pass", exact && within}, {"exact", exact}, {"within_bound", within}});
    return out;
}

CommandResult cmd_net(const Json &config) {
    Params p(config);
    const Index dim = p.integer("dim", 2, 1, kMaxNetDimension);
    const double delta = p.real("delta", 0.5);
    DeltaNetOptions options;
    options.rejection_streak = static_cast<std::size_t>(p.integer("streak", 2000, 1, 10'000'000));
    options.verification_probes = static_cast<std::size_t>(p.integer("probes", 10000, 1, 10'000'000));
    const bool emit_points = p.integer("emit-points", 0, 0, 1) == 1;
    const std::uint64_t seed = p.seed();
    p.finish();
    const DeltaNet net = build_delta_net(dim, delta, seed, options);

    CommandResult out;
    out.report = envelope("net", p, seed);
    Json result{{"dim", net.dim},
                {"delta", net.radius},
                {"points", net.points.size()},
                {"packing_points", net.packing_points},
                {"size_ceiling", net.size_ceiling},
                {"coverage_confidence", net.coverage_confidence},
                {"worst_probe_distance", net.worst_probe_distance}};
    if (emit_points) {
        Json pts = Json::array();
        for (const auto &v : net.points) pts.push_back(state_to_json(v));
        result["states"] = std::move(pts);
    }
    const bool pass = net.coverage_confidence == 1.0 && static_cast<double>(net.points.size()) <= net.size_ceiling;
    finalize(out, result, Json{{"pass", pass}});
    return out;
}

CommandResult cmd_continuity(const Json &config) {
    Params p(config);
    const Index d = p.integer("d", 16, 2, 256);
    const int k = static_cast<int>(p.integer("k", 2, 0, 8));
    const auto pairs = static_cast<std::size_t>(p.integer("pairs", 1000, 1, 1'000'000));
    const std::string spec = p.text("channel", "random:4");
    const std::uint64_t seed = p.seed();
    p.finish();

    // "random:R" draws a fresh channel per instance; anything else is fixed.
    const bool fresh = starts_with(spec, "random:");
    std::optional<QuantumChannel> fixed;
    if (!fresh) {
        SeededRng build(seed, kBuildStream);
        fixed = member_from_spec(spec, d, build, "channel").channel;
    } else {
        parse_count(spec.substr(7), "channel");
    }
    auto rows = parallel_trials_multi(pairs, seed, [&](std::size_t, SeededRng &rng) {
        const QuantumMessageScheme scheme(HaarScheme::sample(d, k, rng));
        const QuantumChannel ch = fresh ? member_from_spec(spec, d, rng, "channel").channel : *fixed;
        ContinuityPair pair{sample_unit_vector(d, rng), sample_unit_vector(d, rng)};
        const ContinuityReport r = continuity_check(scheme, ch, {pair});
        const auto &c = r.checks.front();
        return std::vector<double>{c.z_first, c.z_second, c.lhs, c.rhs, c.pass ? 1.0 : 0.0};
    });

    CommandResult out;
    out.report = envelope("continuity-check", p, seed);
    std::size_t violations = 0;
    double max_gap = -1.0;
    double max_ratio = 0.0;
    Csv csv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i];
        violations += r[4] == 0.0;
        max_gap = std::max(max_gap, r[2] - r[3]);
        if (r[3] > 0.0) max_ratio = std::max(max_ratio, r[2] / r[3]);
        csv.row(seed, i, "0", "1", r[2] - r[3]);
    }
    Json result{{"d", d}, {"k", k}, {"instances", rows.size()}, {"violations", violations}, {"max_gap", max_gap},
                {"max_lhs_over_rhs", max_ratio}, {"slack", kContinuitySlack}};
    out.csv = csv.take();
    finalize(out, result, Json{{"pass", violations == 0}});
    return out;
}

CommandResult cmd_validate_channel(const Json &config) {
    Params p(config);
    const std::string spec = p.text("channel", std::nullopt);
    const auto d = p.optional_integer("d", 1, kMaxDim);
    const std::uint64_t seed = p.seed();
    p.finish();
    SeededRng build(seed, kBuildStream);
    const FamilyMember member = member_from_spec(spec, d, build, "channel");
    const ChannelVerdict v = validate(member.channel);

    CommandResult out;
    out.report = envelope("validate-channel", p, seed);
    Json result{{"dim_in", member.channel.dim_in()},
                {"dim_out", member.channel.dim_out()},
                {"kraus_count", member.channel.kraus_count()},
                {"cp_ok", v.cp_ok},
                {"tp_ok", v.tp_ok},
                {"tp_residual", v.tp_residual},
                {"choi_min_eigenvalue", v.choi_min_eigenvalue},
                {"choi_max_eigenvalue", v.choi_max_eigenvalue}};
    if (v.ok()) {
        result["min_kraus_rank"] = min_kraus_rank(member.channel);
        if (member.channel.dim_in() == member.channel.dim_out()) {
            result["entanglement_fidelity"] = entanglement_fidelity(member.channel);
        }
    }
    finalize(out, result, Json{{"pass", v.ok()}, {"cp", v.cp_ok}, {"tp", v.tp_ok}});
    return out;
}

using Handler = std::function<CommandResult(const Json &)>;

const std::map<std::string, Handler> &handlers() {
    static const std::map<std::string, Handler> table = {
        {"audit-family", cmd_audit_family},
        {"moments", cmd_moments},
        {"soundness", cmd_soundness},
        {"beta-check", cmd_beta_check},
        {"combinatorics-selftest", cmd_combinatorics},
        {"break-classical", cmd_break_classical},
        {"hadamard-demo", cmd_hadamard},
        {"net", cmd_net},
        {"continuity-check", cmd_continuity},
        {"validate-channel", cmd_validate_channel},
    };
    return table;
}

}  // namespace

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[name, handler] : handlers()) out.push_back(name);
        return out;
    }();
    return names;
}

CommandResult run_command(const std::string &name, const Json &config) {
    auto it = handlers().find(name);
    if (it == handlers().end()) fail(ErrorCode::InvalidArgument, "unknown command '" + name + "'", "command");
    return it->second(config);
}

}  // namespace qtamper
