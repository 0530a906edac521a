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

#include <vector>

#include "risisac/channel.hpp"
#include "risisac/types.hpp"

namespace risisac {

struct BeamformerState {
    std::vector<CVec> W;  // communication beams, one per user
    CVec w_s;             // sensing beam
    CVec v;               // RIS phases

    int users() const { return static_cast<int>(W.size()); }
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double x);

// Effective channels H_k for every user at the state's phases.
std::vector<CVec> effective_channels(const ChannelSet& ch, const CVec& v);

// Total received power at user k including its own beam: sum_i |H^H w_i|^2 + |H^H w_s|^2.
double received_power(const CVec& H_k, const BeamformerState& state);

double sinr(const std::vector<CVec>& H, const BeamformerState& state, int k, double sigma2);
double rate(double sinr_value);
double sum_rate(const std::vector<CVec>& H, const BeamformerState& state, double sigma2);
// Mean over slots of per-slot sum-rates.
double average_sum_rate(const std::vector<double>& per_slot);

// ||u||^2 (sum_i |u^H w_i|^2 + |u^H w_s|^2) / sigma_t^2
double radar_snr(const CVec& u, const BeamformerState& state, double sigma_t2);

double total_power(const BeamformerState& state);

}  // namespace risisac
