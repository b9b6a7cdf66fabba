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

#ifndef QTAMPER_JSON_IO_HPP
#define QTAMPER_JSON_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qtamper/adversary.hpp"
#include "qtamper/channel.hpp"
#include "qtamper/matrix.hpp"
#include "qtamper/permutation.hpp"
#include "qtamper/scheme.hpp"

namespace qtamper {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Throws Io when the file cannot be read and Parse when it is not JSON.
Json load_json_file(const std::filesystem::path &path);

// {"rows": r, "cols": c, "entries": [[re, im], ...]} in row-major order.
Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j, const std::string &field);

// A list of [re, im] pairs, or {"amplitudes": [...]}. Must be normalized.
Json state_to_json(const UnitVector &v);
UnitVector state_from_json(const Json &j, const std::string &field);

// One-based image list.
Json permutation_to_json(const Permutation &pi);
Permutation permutation_from_json(const Json &j, const std::string &field);

// {"n": n, "table": [...]}
ClassicalFunction classical_function_from_json(const Json &j, const std::string &field);

// {"dim_in", "dim_out", "kraus": [matrix, ...]}, {"choi": matrix, "dim_in", "dim_out"},
// {"unitary": matrix} or {"pauli": "XZ"}.
Json channel_to_json(const QuantumChannel &ch);
QuantumChannel channel_from_json(const Json &j, const std::string &field);

/// {"label": ..., "channels": [...]}; entries are channel objects, paths to
/// channel files (relative to base_dir), {"classical": {...}} or {"replacement": state}.
AdversarialFamily family_from_json(const Json &j, const std::filesystem::path &base_dir);

/// {"type": "classical_table", "n", "k", "enc_table": [[Pr(c) per codeword] per message], "dec_table": [m or null per codeword]}
ClassicalSchemeTable classical_scheme_from_json(const Json &j, const std::string &field);
Json classical_scheme_to_json(const ClassicalSchemeTable &scheme);

Json audit_to_json(const FamilyAudit &audit);

}  // namespace qtamper

#endif
