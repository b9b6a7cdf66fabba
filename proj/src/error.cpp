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

#include "qtamper/error.hpp"

namespace qtamper {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid-argument";
        case ErrorCode::InvalidDimension:
            return "invalid-dimension";
        case ErrorCode::SizeLimit:
            return "size-limit";
        case ErrorCode::Shape:
            return "shape";
        case ErrorCode::Domain:
            return "domain";
        case ErrorCode::InvalidState:
            return "invalid-state";
        case ErrorCode::UnsupportedOrder:
            return "unsupported-order";
        case ErrorCode::Parse:
            return "parse";
        case ErrorCode::NoVictim:
            return "no-victim";
        case ErrorCode::Family:
            return "family";
        case ErrorCode::NetConstruction:
            return "net-construction";
        case ErrorCode::Numerical:
            return "numerical";
        case ErrorCode::Io:
            return "io";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message, std::string field)
    : std::runtime_error(field.empty() ? message : field + ": " + message), code_(code), field_(std::move(field)) {}

void fail(ErrorCode code, const std::string &message, std::string field) {
    throw Error(code, message, std::move(field));
}

}  // namespace qtamper
