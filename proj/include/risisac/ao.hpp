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

#include <random>
#include <string>
#include <vector>

#include "risisac/channel.hpp"
#include "risisac/fp.hpp"
#include "risisac/metrics.hpp"
#include "risisac/qsolver.hpp"
#include "risisac/scenario.hpp"

namespace risisac {

// One slot's channels with the scenario parameters in linear units.
struct SlotProblem {
    ChannelSet channels;
    double p_max = 0.0;    // W
    double gamma = 0.0;    // linear radar SNR floor, 0 disables sensing
    double sigma2 = 0.0;   // W, communication noise
    double sigma_t2 = 0.0; // W, sensing noise
};

SlotProblem make_slot_problem(const ChannelSet& channels, const ScenarioConfig& cfg);

struct AoOptions {
    double epsilon = 1e-3;  // relative sum-rate increase that ends the loop
    int max_outer = 50;
    bool optimize_phases = true;  // false keeps v from initialization (random-phase scheme)
    // Relaxed annulus (1 - delta)^2 <= |v_n|^2 <= 1 used inside the phase subproblem.
    double modulus_slack = 0.1;
    SolveOptions qp;
};

struct TracePoint {
    int iteration = 0;
    double sum_rate = 0.0;
    double radar_snr_db = 0.0;
    double power_w = 0.0;
};

struct SlotSolution {
    BeamformerState state;
    AuxVars aux;
    std::vector<TracePoint> trace;  // entry 0 is the initial point
    int iterations = 0;
    double final_sum_rate = 0.0;
    double final_radar_snr_db = 0.0;
    double power_w = 0.0;
    bool feasible = false;
    bool converged = false;
    int rejected_p3 = 0;  // subproblem results discarded by the safeguards
    int rejected_p4 = 0;
    std::string diagnostic;
};

// Random unit-modulus phases from `rng`, then beams from those phases.
BeamformerState initialize(const SlotProblem& prob, std::mt19937_64& rng);

// Matched-filter beams for fixed phases: 80% of the power split evenly over
// the users and 20% on the sensing beam, with the sensing share raised by
// bisection until the radar SNR floor holds. Throws InfeasibleError if even
// a full-power sensing beam falls short.
BeamformerState initialize_beams(const SlotProblem& prob, const CVec& v);

// Constraint on the stacked beams [w_1; ...; w_K; w_s] scaled so that a
// unit value means one SNR floor. Absent when the floor is zero.
ConvexQPInstance build_p3(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux);
// Phase subproblem over v with the constant entry of [v; 1] eliminated.
ConvexQPInstance build_p4(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux,
                          double modulus_slack);

struct StepResult {
    BeamformerState state;
    SolveReport report;
    bool accepted = false;
};

// Each returns the input state unchanged (accepted = false) when the solver
// fails or the candidate would lower the sum-rate or break feasibility.
StepResult solve_p3(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux,
                    const SolveOptions& qp = {});
StepResult solve_p4(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux,
                    double modulus_slack = 0.1, const SolveOptions& qp = {});

// Projects v onto the unit circle and re-solves the beams for those phases.
BeamformerState finalize(const SlotProblem& prob, const BeamformerState& state, const SolveOptions& qp = {});

bool is_feasible(const SlotProblem& prob, const BeamformerState& state);
double slot_sum_rate(const SlotProblem& prob, const BeamformerState& state);
double slot_radar_snr(const SlotProblem& prob, const BeamformerState& state);

// Algorithm driver from a given initial state.
SlotSolution run_slot(const SlotProblem& prob, const BeamformerState& init, const AoOptions& opts);
SlotSolution run_slot(const SlotProblem& prob, std::mt19937_64& rng, const AoOptions& opts);

}  // namespace risisac
