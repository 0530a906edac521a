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
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "risisac/ao.hpp"
#include "risisac/config.hpp"

namespace risisac {

// Scenario as seen by a scheme: no-ris drops the surface.
ScenarioConfig scheme_config(Scheme scheme, const ScenarioConfig& cfg);
AoOptions scheme_options(Scheme scheme, const ScenarioConfig& cfg);

// Slot problem for slot l (0-based) with channels drawn from cfg.seed.
SlotProblem slot_problem(const ScenarioConfig& cfg, int slot);

// Runs every slot of cfg under the scheme. Initial phases come from the
// same stream for every scheme, so random-phase starts where proposed does.
// Throws InfeasibleError if a slot cannot meet the radar SNR floor.
std::vector<SlotSolution> run_scheme(Scheme scheme, const ScenarioConfig& cfg);

struct SweepSpec {
    SweepParam param = SweepParam::PMaxDbm;
    std::vector<double> grid;
    std::vector<std::uint64_t> seeds;
    std::vector<Scheme> schemes{Scheme::Proposed, Scheme::RandomPhase, Scheme::NoRis};
};

SweepSpec make_sweep_spec(const SweepConfig& sweep);

// Base configuration with the swept parameter set to `value`.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value);

struct SweepRow {
    Scheme scheme = Scheme::Proposed;
    SweepParam param = SweepParam::PMaxDbm;
    double param_value = 0.0;
    std::uint64_t seed = 0;
    double sum_rate = 0.0;      // mean over slots, bit/s/Hz
    double radar_snr_db = 0.0;  // mean over slots
    double power_w = 0.0;       // mean over slots
    int iterations = 0;         // outer iterations summed over slots
    double wall_ms = 0.0;
    std::string status = "ok";  // ok, infeasible, error
};

struct SweepResult {
    std::vector<SweepRow> rows;  // ordered by (scheme, value, seed) as listed in the spec
};

// Number of worker threads: `requested` if positive, else RIS_ISAC_JOBS, else
// the hardware concurrency.
int resolve_jobs(int requested);

// Runs tasks on `jobs` workers; results land by index, so order is fixed.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

SweepResult run_sweep(const SweepSpec& spec, const ScenarioConfig& base, int jobs = 1);

void write_sweep_csv(const SweepResult& result, std::ostream& os);

struct SummaryRow {
    Scheme scheme = Scheme::Proposed;
    double param_value = 0.0;
    int count = 0;       // feasible seeds
    int infeasible = 0;  // excluded seeds
    double mean = 0.0;
    double stderr_ = 0.0;
    double mean_radar_snr_db = 0.0;
};

// Mean and standard error (sample deviation over sqrt(n)) of the sum-rate per
// (scheme, value), feasible rows only. Throws std::invalid_argument if empty.
std::vector<SummaryRow> summarize(const SweepResult& result);

double mean_of(const std::vector<double>& x);
double standard_error(const std::vector<double>& x);

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace risisac
