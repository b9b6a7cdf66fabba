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

#ifndef QTAMPER_ERROR_HPP
#define QTAMPER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtamper {

/// Failure categories shared by the C++ core and the C API status codes.
/// The numeric values are part of the C ABI (see qtamper.h) and must not move.
enum class ErrorCode : int {
    InvalidArgument = 1,
    InvalidDimension = 2,
    SizeLimit = 3,
    Shape = 4,
    Domain = 5,
    InvalidState = 6,
    UnsupportedOrder = 7,
    Parse = 8,
    NoVictim = 9,
    Family = 10,
    NetConstruction = 11,
    Numerical = 12,
    Io = 13,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message, std::string field = {});

    ErrorCode code() const noexcept { return code_; }
    /// Name of the offending input field, when one is known (may be empty).
    const std::string &field() const noexcept { return field_; }

   private:
    ErrorCode code_;
    std::string field_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message, std::string field = {});

}  // namespace qtamper

#endif
