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

#include "qtamper/json_io.hpp"

#include <fstream>
#include <sstream>

#include "qtamper/error.hpp"

namespace qtamper {

namespace {

[[noreturn]] void parse_fail(const std::string &field, const std::string &what) { fail(ErrorCode::Parse, what, field); }

const Json &member(const Json &j, const char *key, const std::string &field) {
    if (!j.is_object()) parse_fail(field, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(field + "." + key, "missing");
    return *it;
}

std::int64_t as_int(const Json &j, const std::string &field) {
    if (!j.is_number_integer()) parse_fail(field, "expected an integer");
    return j.get<std::int64_t>();
}

double as_double(const Json &j, const std::string &field) {
    if (!j.is_number()) parse_fail(field, "expected a number");
    return j.get<double>();
}

Complex as_complex(const Json &j, const std::string &field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) parse_fail(field, "expected [re, im]");
    return {as_double(j[0], field), as_double(j[1], field)};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

ComplexVector vector_from_json(const Json &j, const std::string &field) {
    if (!j.is_array() || j.empty()) parse_fail(field, "expected a non-empty list of [re, im] pairs");
    check_matrix_size(static_cast<double>(j.size()), 1.0, field);
    ComplexVector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = as_complex(j[i], field + "[" + std::to_string(i) + "]");
    return v;
}

Index as_dim(const Json &j, const std::string &field) {
    const auto v = as_int(j, field);
    if (v < 1) fail(ErrorCode::InvalidDimension, "dimension must be positive", field);
    check_matrix_size(static_cast<double>(v), 1.0, field);
    return static_cast<Index>(v);
}

}  // namespace

Json load_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open " + path.string(), path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what(), path.string());
    }
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json entries = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) entries.push_back(complex_to_json(m(r, c)));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json &j, const std::string &field) {
    const Index rows = as_dim(member(j, "rows", field), field + ".rows");
    const Index cols = as_dim(member(j, "cols", field), field + ".cols");
    check_matrix_size(static_cast<double>(rows), static_cast<double>(cols), field);
    const Json &entries = member(j, "entries", field);
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows * cols)) {
        fail(ErrorCode::Shape, "entries must hold rows * cols values", field + ".entries");
    }
    ComplexMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            m(r, c) = as_complex(entries[static_cast<std::size_t>(r * cols + c)], field + ".entries");
        }
    }
    return m;
}

Json state_to_json(const UnitVector &v) {
    Json out = Json::array();
    for (Index i = 0; i < v.dim(); ++i) out.push_back(complex_to_json(v[i]));
    return out;
}

UnitVector state_from_json(const Json &j, const std::string &field) {
    if (j.is_object()) return state_from_json(member(j, "amplitudes", field), field + ".amplitudes");
    try {
        return UnitVector(vector_from_json(j, field));
    } catch (const Error &e) {
        fail(e.code(), "state is not normalized", field);
    }
}

Json permutation_to_json(const Permutation &pi) { return Json(pi.one_based()); }

Permutation permutation_from_json(const Json &j, const std::string &field) {
    if (!j.is_array()) parse_fail(field, "expected a list of one-based images");
    std::vector<int> images;
    for (std::size_t i = 0; i < j.size(); ++i) images.push_back(static_cast<int>(as_int(j[i], field)));
    return Permutation::from_one_based(images);
}

ClassicalFunction classical_function_from_json(const Json &j, const std::string &field) {
    const auto n = as_int(member(j, "n", field), field + ".n");
    const Json &table = member(j, "table", field);
    if (!table.is_array()) parse_fail(field + ".table", "expected a list");
    std::vector<std::uint32_t> values;
    for (const auto &v : table) {
        const auto x = as_int(v, field + ".table");
        if (x < 0) fail(ErrorCode::Domain, "table entries must be non-negative", field + ".table");
        values.push_back(static_cast<std::uint32_t>(x));
    }
    if (n < 1 || n > 12) fail(ErrorCode::InvalidDimension, "n must lie in 1..12", field + ".n");
    return ClassicalFunction(static_cast<int>(n), std::move(values));
}

Json channel_to_json(const QuantumChannel &ch) {
    Json kraus = Json::array();
    for (const auto &k : ch.kraus()) kraus.push_back(matrix_to_json(k));
    return Json{{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const Json &j, const std::string &field) {
    if (!j.is_object()) parse_fail(field, "expected a channel object");
    if (j.contains("unitary")) return unitary_channel(matrix_from_json(j["unitary"], field + ".unitary"));
    if (j.contains("pauli")) {
        if (!j["pauli"].is_string()) parse_fail(field + ".pauli", "expected a string");
        return pauli_channel(j["pauli"].get<std::string>());
    }
    if (j.contains("choi")) {
        const Index din = as_dim(member(j, "dim_in", field), field + ".dim_in");
        const Index dout = as_dim(member(j, "dim_out", field), field + ".dim_out");
        return QuantumChannel::from_choi(ChoiMatrix(din, dout, matrix_from_json(j["choi"], field + ".choi")));
    }
    const Json &list = member(j, "kraus", field);
    if (!list.is_array() || list.empty()) parse_fail(field + ".kraus", "expected a non-empty list of matrices");
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < list.size(); ++i) {
        kraus.push_back(matrix_from_json(list[i], field + ".kraus[" + std::to_string(i) + "]"));
    }
    const Index din = j.contains("dim_in") ? as_dim(j["dim_in"], field + ".dim_in") : kraus.front().cols();
    const Index dout = j.contains("dim_out") ? as_dim(j["dim_out"], field + ".dim_out") : kraus.front().rows();
    return QuantumChannel(din, dout, std::move(kraus));
}

AdversarialFamily family_from_json(const Json &j, const std::filesystem::path &base_dir) {
    const Json &list = member(j, "channels", "family");
    if (!list.is_array()) parse_fail("family.channels", "expected a list");
    std::vector<FamilyMember> members;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string field = "family.channels[" + std::to_string(i) + "]";
        const Json &entry = list[i];
        std::string label = entry.is_object() && entry.contains("label") && entry["label"].is_string()
                                ? entry["label"].get<std::string>()
                                : std::string{};
        if (entry.is_string()) {
            const auto path = base_dir / entry.get<std::string>();
            members.push_back(FamilyMember::generic(channel_from_json(load_json_file(path), path.string()), entry.get<std::string>()));
        } else if (entry.is_object() && entry.contains("classical")) {
            members.push_back(FamilyMember::classical(classical_function_from_json(entry["classical"], field + ".classical"), label));
        } else if (entry.is_object() && entry.contains("replacement")) {
            members.push_back(FamilyMember::replacement(state_from_json(entry["replacement"], field + ".replacement"), label));
        } else if (entry.is_object() && entry.contains("unitary")) {
            members.push_back(FamilyMember::unitary(matrix_from_json(entry["unitary"], field + ".unitary"), label));
        } else {
            members.push_back(FamilyMember::generic(channel_from_json(entry, field), label));
        }
    }
    std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "family";
    return AdversarialFamily(std::move(label), std::move(members));
}

ClassicalSchemeTable classical_scheme_from_json(const Json &j, const std::string &field) {
    const auto n = as_int(member(j, "n", field), field + ".n");
    const auto k = as_int(member(j, "k", field), field + ".k");
    if (n < 1 || n > 16) fail(ErrorCode::InvalidDimension, "n must lie in 1..16", field + ".n");
    if (k < 0 || k > n) fail(ErrorCode::InvalidDimension, "k must lie in 0..n", field + ".k");
    const Json &enc = member(j, "enc_table", field);
    const Json &dec = member(j, "dec_table", field);
    if (!enc.is_array() || !dec.is_array()) parse_fail(field, "enc_table and dec_table must be lists");
    std::vector<std::vector<double>> enc_table;
    for (std::size_t m = 0; m < enc.size(); ++m) {
        const std::string f = field + ".enc_table[" + std::to_string(m) + "]";
        if (!enc[m].is_array()) parse_fail(f, "expected a list of probabilities");
        std::vector<double> row;
        for (const auto &p : enc[m]) row.push_back(as_double(p, f));
        enc_table.push_back(std::move(row));
    }
    std::vector<ClassicalSchemeTable::Decoded> dec_table;
    for (std::size_t c = 0; c < dec.size(); ++c) {
        if (dec[c].is_null()) {
            dec_table.push_back(std::nullopt);
        } else {
            const auto m = as_int(dec[c], field + ".dec_table[" + std::to_string(c) + "]");
            if (m < 0) fail(ErrorCode::Domain, "decoded message must be non-negative", field + ".dec_table");
            dec_table.push_back(static_cast<std::uint32_t>(m));
        }
    }
    return ClassicalSchemeTable(static_cast<int>(n), static_cast<int>(k), std::move(enc_table), std::move(dec_table));
}

Json classical_scheme_to_json(const ClassicalSchemeTable &scheme) {
    Json dec = Json::array();
    for (const auto &m : scheme.dec()) dec.push_back(m ? Json(*m) : Json(nullptr));
    return Json{{"type", "classical_table"},
                {"n", scheme.codeword_bits()},
                {"k", scheme.message_bits()},
                {"enc_table", scheme.enc()},
                {"dec_table", std::move(dec)}};
}

namespace {

Json condition_json(const ConditionVerdict &v) {
    return Json{{"threshold", v.threshold}, {"observed", v.observed}, {"pass", v.pass}};
}

}  // namespace

Json audit_to_json(const FamilyAudit &audit) {
    Json unitary = Json::array();
    for (const auto &u : audit.unitary_members) {
        unitary.push_back(Json{{"index", u.index}, {"abs_trace", u.abs_trace}, {"threshold", u.threshold}, {"pass", u.pass}});
    }
    Json classical = Json::array();
    for (const auto &c : audit.classical_members) {
        classical.push_back(Json{{"index", c.index},
                                 {"min_entropy", c.min_entropy},
                                 {"min_entropy_threshold", c.min_entropy_threshold},
                                 {"p_fix", c.p_fix},
                                 {"p_fix_threshold", c.p_fix_threshold},
                                 {"pass", c.pass}});
    }
    return Json{{"dim", audit.dim},
                {"alpha", audit.profile.alpha},
                {"delta", audit.profile.delta},
                {"size_log2", condition_json(audit.size)},
                {"rank", condition_json(audit.rank)},
                {"entanglement_fidelity", condition_json(audit.fidelity)},
                {"unitary_members", std::move(unitary)},
                {"classical_members", std::move(classical)},
                {"theorem_conditions_pass", audit.theorem_conditions_pass()}};
}

}  // namespace qtamper
