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

#include "risisac/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "risisac/rng.hpp"

namespace risisac {

namespace {

constexpr double kLosOnlyKappa = 1e6;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

CVec steering_vector(int n, double theta) {
    require(n >= 1, "steering_vector: element count must be positive");
    const double s = std::sin(theta);
    CVec a(n);
    a(0) = 1.0;
    for (int m = 1; m < n; ++m) a(m) = std::polar(1.0, -kPi * m * s);
    return a;
}

double path_amplitude(double beta0_db, double d, double alpha) {
    require(d >= 1.0, "path_amplitude: distance below the 1 m reference");
    return std::sqrt(std::pow(10.0, beta0_db / 10.0) * std::pow(d, -alpha));
}

CMat sample_rician(const CMat& a_los, double kappa_db, double beta, std::mt19937_64& rng) {
    const double kappa = std::pow(10.0, kappa_db / 10.0);
    const bool los_only = kappa >= kLosOnlyKappa;
    const double w_los = los_only ? 1.0 : std::sqrt(kappa / (kappa + 1.0));
    const double w_nlos = los_only ? 0.0 : std::sqrt(1.0 / (kappa + 1.0));
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMat h(a_los.rows(), a_los.cols());
    for (Eigen::Index i = 0; i < a_los.rows(); ++i) {
        for (Eigen::Index j = 0; j < a_los.cols(); ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            h(i, j) = beta * (w_los * a_los(i, j) + w_nlos * cplx(re, im));
        }
    }
    return h;
}

CVec sample_rician(const CVec& a_los, double kappa_db, double beta, std::mt19937_64& rng) {
    return sample_rician(CMat(a_los), kappa_db, beta, rng).col(0);
}

ChannelSet sample_channels(const ScenarioConfig& cfg, const SlotGeometry& geo, int slot, std::uint64_t seed) {
    const int M = cfg.antennas;
    const int N = cfg.ris_elements;
    const int K = cfg.users;
    require(static_cast<int>(geo.bs_luav.size()) == K, "sample_channels: geometry/user count mismatch");
    const auto s = static_cast<std::uint64_t>(slot);
    const double b0 = cfg.beta0_db;

    ChannelSet ch;
    ch.h_d.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        auto rng = make_stream(seed, s, Stream::BsUser, static_cast<std::uint64_t>(k));
        const auto& link = geo.bs_luav[static_cast<std::size_t>(k)];
        ch.h_d.push_back(sample_rician(steering_vector(M, link.departure), cfg.kappa_db.bs_luav,
                                       path_amplitude(b0, link.distance, cfg.alpha.bs_luav), rng));
    }
    ch.g_dt = path_amplitude(b0, geo.bs_uuav.distance, cfg.alpha.bs_uuav) *
              steering_vector(M, geo.bs_uuav.departure);

    if (N == 0) {
        ch.G = CMat(0, M);
        ch.h_r.assign(static_cast<std::size_t>(K), CVec(0));
        ch.g_rt = CVec(0);
        return ch;
    }
    require(static_cast<int>(geo.ris_luav.size()) == K, "sample_channels: missing RIS geometry");

    {
        auto rng = make_stream(seed, s, Stream::BsRis);
        const CMat los = steering_vector(N, geo.bs_ris.arrival) * steering_vector(M, geo.bs_ris.departure).adjoint();
        ch.G = sample_rician(los, cfg.kappa_db.bs_ris, path_amplitude(b0, geo.bs_ris.distance, cfg.alpha.bs_ris), rng);
    }
    ch.h_r.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        auto rng = make_stream(seed, s, Stream::RisUser, static_cast<std::uint64_t>(k));
        const auto& link = geo.ris_luav[static_cast<std::size_t>(k)];
        ch.h_r.push_back(sample_rician(steering_vector(N, link.departure), cfg.kappa_db.ris_luav,
                                       path_amplitude(b0, link.distance, cfg.alpha.ris_luav), rng));
    }
    ch.g_rt = path_amplitude(b0, geo.ris_uuav.distance, cfg.alpha.ris_uuav) *
              steering_vector(N, geo.ris_uuav.departure);
    return ch;
}

CVec effective_comm_channel(const CVec& h_d, const CVec& h_r, const CVec& v, const CMat& G) {
    require(G.cols() == h_d.size() && G.rows() == h_r.size() && v.size() == h_r.size(),
            "effective_comm_channel: dimension mismatch");
    if (h_r.size() == 0) return h_d;
    // (h_r^H diag(v) G)^H = G^H (conj(v) .* h_r)
    return h_d + G.adjoint() * v.conjugate().cwiseProduct(h_r);
}

CVec target_composite(const CVec& g_dt, const CVec& g_rt, const CVec& v, const CMat& G) {
    require(G.cols() == g_dt.size() && G.rows() == g_rt.size() && v.size() == g_rt.size(),
            "target_composite: dimension mismatch");
    if (g_rt.size() == 0) return g_dt;
    return g_dt + G.adjoint() * v.cwiseProduct(g_rt);
}

CVec reshape_comm(const CVec& h_d, const CVec& h_r, const CMat& G, const CVec& w_j) {
    require(G.cols() == h_d.size() && G.rows() == h_r.size() && w_j.size() == h_d.size(),
            "reshape_comm: dimension mismatch");
    const auto N = h_r.size();
    CVec out(N + 1);
    if (N > 0) out.head(N) = (G * w_j).conjugate().cwiseProduct(h_r);
    out(N) = std::conj(h_d.dot(w_j));  // h_d.dot(w) = h_d^H w
    return out;
}

CMat reshape_target(const CMat& G, const CVec& g_rt, const CVec& g_dt) {
    require(G.cols() == g_dt.size() && G.rows() == g_rt.size(), "reshape_target: dimension mismatch");
    const auto N = g_rt.size();
    CMat out(g_dt.size(), N + 1);
    if (N > 0) out.leftCols(N) = G.adjoint() * g_rt.asDiagonal();
    out.col(N) = g_dt;
    return out;
}

CVec extend_phases(const CVec& v) {
    CVec out(v.size() + 1);
    out.head(v.size()) = v;
    out(v.size()) = 1.0;
    return out;
}

}  // namespace risisac
