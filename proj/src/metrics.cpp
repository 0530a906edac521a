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

#include "risisac/metrics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace risisac {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

std::vector<CVec> effective_channels(const ChannelSet& ch, const CVec& v) {
    std::vector<CVec> H;
    H.reserve(ch.h_d.size());
    for (std::size_t k = 0; k < ch.h_d.size(); ++k)
        H.push_back(effective_comm_channel(ch.h_d[k], ch.h_r[k], v, ch.G));
    return H;
}

double received_power(const CVec& H_k, const BeamformerState& state) {
    double total = std::norm(H_k.dot(state.w_s));
    for (const auto& w : state.W) total += std::norm(H_k.dot(w));
    return total;
}

double sinr(const std::vector<CVec>& H, const BeamformerState& state, int k, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sinr: noise power must be positive");
    if (k < 0 || k >= state.users() || static_cast<std::size_t>(k) >= H.size())
        throw std::out_of_range("sinr: user index");
    const auto& Hk = H[static_cast<std::size_t>(k)];
    const double signal = std::norm(Hk.dot(state.W[static_cast<std::size_t>(k)]));
    // Subtracting the signal from the total loses precision when it dominates.
    double interference = std::norm(Hk.dot(state.w_s));
    for (int i = 0; i < state.users(); ++i)
        if (i != k) interference += std::norm(Hk.dot(state.W[static_cast<std::size_t>(i)]));
    return signal / (interference + sigma2);
}

double rate(double sinr_value) {
    if (sinr_value < 0.0) throw std::invalid_argument("rate: negative SINR");
    return std::log2(1.0 + sinr_value);
}

double sum_rate(const std::vector<CVec>& H, const BeamformerState& state, double sigma2) {
    double total = 0.0;
    for (int k = 0; k < state.users(); ++k) total += rate(sinr(H, state, k, sigma2));
    return total;
}

double average_sum_rate(const std::vector<double>& per_slot) {
    if (per_slot.empty()) throw std::invalid_argument("average_sum_rate: no slots");
    return std::accumulate(per_slot.begin(), per_slot.end(), 0.0) / static_cast<double>(per_slot.size());
}

double radar_snr(const CVec& u, const BeamformerState& state, double sigma_t2) {
    if (!(sigma_t2 > 0.0)) throw std::invalid_argument("radar_snr: noise power must be positive");
    double echo = std::norm(u.dot(state.w_s));
    for (const auto& w : state.W) echo += std::norm(u.dot(w));
    return u.squaredNorm() * echo / sigma_t2;
}

double total_power(const BeamformerState& state) {
    double p = state.w_s.squaredNorm();
    for (const auto& w : state.W) p += w.squaredNorm();
    return p;
}

}  // namespace risisac
