// SPDX-License-Identifier: Apache-2.0
//
// ris-isac: coordinated active/passive beamforming for RIS-assisted ISAC
// Copyright (C) 2026 The ris-isac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace risisac {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// -h or --help; what() is the help text.
class HelpRequest : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Subcommand { Solve, Sweep, Validate, DumpChannels };

struct Command {
    Subcommand subcommand = Subcommand::Solve;
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    bool trace = false;
    int jobs = 0;  // 0 defers to RIS_ISAC_JOBS, then hardware concurrency
};

// args excludes the program name. Throws UsageError with the message to show,
// or HelpRequest.
Command parse_args(const std::vector<std::string>& args);

std::string usage_text();

// Returns the process exit code: 0 success, 1 runtime or infeasible, 2 usage
// or configuration error.
int execute(const Command& cmd, std::ostream& out, std::ostream& err);

// parse_args + execute with error reporting.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace risisac
