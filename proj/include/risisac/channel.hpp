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
#include <random>
#include <vector>

#include "risisac/scenario.hpp"
#include "risisac/types.hpp"

namespace risisac {

// Per-slot propagation channels. With N = 0 the RIS quantities are empty.
struct ChannelSet {
    CMat G;                  // N x M, BS -> RIS
    std::vector<CVec> h_d;   // K x (M), BS -> L-UAV k
    std::vector<CVec> h_r;   // K x (N), RIS -> L-UAV k
    CVec g_dt;               // M, BS -> U-UAV
    CVec g_rt;               // N, RIS -> U-UAV

    int antennas() const { return static_cast<int>(g_dt.size()); }
    int elements() const { return static_cast<int>(g_rt.size()); }
    int users() const { return static_cast<int>(h_d.size()); }
};

// Entry m is exp(-i*pi*m*sin(theta)); no conjugation is applied here.
CVec steering_vector(int n, double theta);

// sqrt(10^(beta0_db/10) * d^-alpha). Throws std::invalid_argument if d < 1.
double path_amplitude(double beta0_db, double d, double alpha);

// beta * (sqrt(k/(k+1)) * a_los + sqrt(1/(k+1)) * z), z ~ CN(0, 1) i.i.d.
// Entries are drawn row by row, so a prefix of rows depends only on the
// stream state. The scattered part is always drawn (and discarded for
// k >= 1e6) to keep stream consumption independent of kappa.
CMat sample_rician(const CMat& a_los, double kappa_db, double beta, std::mt19937_64& rng);
CVec sample_rician(const CVec& a_los, double kappa_db, double beta, std::mt19937_64& rng);

ChannelSet sample_channels(const ScenarioConfig& cfg, const SlotGeometry& geometry, int slot,
                           std::uint64_t seed);

// H with H^H = h_d^H + h_r^H diag(v) G. Relaxed phases (|v_n| < 1) are
// accepted so that intermediate iterates can be evaluated.
CVec effective_comm_channel(const CVec& h_d, const CVec& h_r, const CVec& v, const CMat& G);

// u = g_dt + G^H diag(v) g_rt; the sensing matrix is G_t = u u^H.
CVec target_composite(const CVec& g_dt, const CVec& g_rt, const CVec& v, const CMat& G);

// H~ (length N+1) with H~^H [v; 1] = (h_d^H + h_r^H diag(v) G) w_j.
CVec reshape_comm(const CVec& h_d, const CVec& h_r, const CMat& G, const CVec& w_j);

// G~_t = [G^H diag(g_rt) | g_dt], M x (N+1), so that G~_t [v; 1] = u.
CMat reshape_target(const CMat& G, const CVec& g_rt, const CVec& g_dt);

// [v; 1]
CVec extend_phases(const CVec& v);

}  // namespace risisac
