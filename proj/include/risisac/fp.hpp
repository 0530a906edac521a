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

#include "risisac/metrics.hpp"
#include "risisac/types.hpp"

namespace risisac {

struct AuxVars {
    RVec r;  // per-user SINR proxies, r_k >= 0
    CVec c;  // per-user quadratic-transform weights
};

// All functions here act on one slot; slots are separable and callers average.

RVec update_r(const std::vector<CVec>& H, const BeamformerState& state, double sigma2);

// sum_k log2(1+r_k) - r_k + (1+r_k) |H_k^H w_k|^2 / (P_k + sigma2), P_k including user k.
double dual_objective(const std::vector<CVec>& H, const BeamformerState& state, const RVec& r, double sigma2);

// sum_k log2(1+r_k) - r_k, the part of the dual objective that does not see the beams.
double dual_offset(const RVec& r);

CVec update_c(const std::vector<CVec>& H, const BeamformerState& state, const RVec& r, double sigma2);

// sum_k 2 sqrt(1+r_k) Re{conj(c_k) H_k^H w_k} - |c_k|^2 (P_k + sigma2)
double quad_objective(const std::vector<CVec>& H, const BeamformerState& state, const RVec& r, const CVec& c,
                      double sigma2);

}  // namespace risisac
