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

#include "risisac/fp.hpp"

#include <cmath>
#include <stdexcept>

namespace risisac {

namespace {

void check(const std::vector<CVec>& H, const BeamformerState& state, Eigen::Index aux_size) {
    if (H.size() != state.W.size() || (aux_size >= 0 && aux_size != state.users()))
        throw std::invalid_argument("fp: user count mismatch");
}

}  // namespace

RVec update_r(const std::vector<CVec>& H, const BeamformerState& state, double sigma2) {
    check(H, state, -1);
    RVec r(state.users());
    for (int k = 0; k < state.users(); ++k) r(k) = sinr(H, state, k, sigma2);
    return r;
}

double dual_offset(const RVec& r) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < r.size(); ++k) {
        if (r(k) < 0.0) throw std::invalid_argument("fp: negative r");
        total += std::log2(1.0 + r(k)) - r(k);
    }
    return total;
}

double dual_objective(const std::vector<CVec>& H, const BeamformerState& state, const RVec& r, double sigma2) {
    check(H, state, r.size());
    double total = dual_offset(r);
    for (int k = 0; k < state.users(); ++k) {
        const auto& Hk = H[static_cast<std::size_t>(k)];
        const double signal = std::norm(Hk.dot(state.W[static_cast<std::size_t>(k)]));
        total += (1.0 + r(k)) * signal / (received_power(Hk, state) + sigma2);
    }
    return total;
}

CVec update_c(const std::vector<CVec>& H, const BeamformerState& state, const RVec& r, double sigma2) {
    check(H, state, r.size());
    CVec c(state.users());
    for (int k = 0; k < state.users(); ++k) {
        const auto& Hk = H[static_cast<std::size_t>(k)];
        const cplx y = Hk.dot(state.W[static_cast<std::size_t>(k)]);
        c(k) = std::sqrt(1.0 + r(k)) * y / (received_power(Hk, state) + sigma2);
    }
    return c;
}

double quad_objective(const std::vector<CVec>& H, const BeamformerState& state, const RVec& r, const CVec& c,
                      double sigma2) {
    check(H, state, r.size());
    if (c.size() != r.size()) throw std::invalid_argument("fp: aux size mismatch");
    double total = 0.0;
    for (int k = 0; k < state.users(); ++k) {
        const auto& Hk = H[static_cast<std::size_t>(k)];
        const cplx y = Hk.dot(state.W[static_cast<std::size_t>(k)]);
        total += 2.0 * std::sqrt(1.0 + r(k)) * std::real(std::conj(c(k)) * y) -
                 std::norm(c(k)) * (received_power(Hk, state) + sigma2);
    }
    return total;
}

}  // namespace risisac
