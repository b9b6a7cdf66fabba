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

#ifndef QTAMPER_COMMANDS_HPP
#define QTAMPER_COMMANDS_HPP

#include <string>
#include <vector>

#include "qtamper/json_io.hpp"

namespace qtamper {

struct CommandResult {
    Json report;      ///< deterministic body: config, result, verdict
    std::string csv;  ///< seed,trial,s,t,value rows; empty when the command has none
    bool pass = false;
};

const std::vector<std::string> &command_names();

/// Runs one subcommand on a flat config object whose keys are the long flag
/// names (without dashes). Unknown keys throw InvalidArgument naming the key.
CommandResult run_command(const std::string &name, const Json &config);

}  // namespace qtamper

#endif
