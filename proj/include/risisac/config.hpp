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
#include <map>
#include <string>
#include <vector>

#include "risisac/scenario.hpp"

namespace risisac {

enum class Scheme { Proposed, RandomPhase, NoRis };

enum class SweepParam { PMaxDbm, NElements, AlphaBsLuav, KUsers, MAntennas };

std::string to_string(Scheme s);
std::string to_string(SweepParam p);
Scheme parse_scheme(const std::string& tag);      // throws ConfigError
SweepParam parse_sweep_param(const std::string& name);  // throws ConfigError

struct SweepConfig {
    SweepParam param = SweepParam::PMaxDbm;
    std::vector<double> grid{21.0, 24.0, 27.0, 30.0, 33.0};
    std::vector<std::uint64_t> seeds;  // empty means 1..20
    std::vector<Scheme> schemes{Scheme::Proposed, Scheme::RandomPhase, Scheme::NoRis};
};

struct RunConfig {
    ScenarioConfig scenario = default_scenario();
    SweepConfig sweep;
};

// Ordered settings; a later key replaces an earlier one.
using Settings = std::map<std::string, std::string>;

// Parses `key = value` lines. Blank lines and text after '#' are ignored.
Settings parse_settings(const std::string& text, const std::string& origin = "<string>");
Settings read_settings_file(const std::string& path);

// Splits "KEY=VALUE". Throws ConfigError if there is no '='.
std::pair<std::string, std::string> split_assignment(const std::string& text);

bool is_known_key(const std::string& key);

// Builds a configuration from defaults plus the settings. Scalar keys apply
// first, then K and L resize the default layout, then positions. Throws
// ConfigError for unknown keys, malformed values, or invalid results.
RunConfig build_config(const Settings& settings);

// Renders every key of the configuration, loadable by build_config.
std::string render_settings(const RunConfig& cfg);

// Number parsing shared with the CLI. Accept "inf" and "-inf" for doubles.
double parse_double(const std::string& text, const std::string& key);
std::int64_t parse_int(const std::string& text, const std::string& key);
std::uint64_t parse_u64(const std::string& text, const std::string& key);
Position3D parse_position(const std::string& text, const std::string& key);

}  // namespace risisac
