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

#include "risisac/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace risisac {

namespace {

constexpr double kUavHeight = 40.0;
constexpr double kDriftPerSlot = 2.0;
constexpr double kLuavCenterX = 300.0;
constexpr double kLuavCenterY = 0.0;

// 4x4 lattice over a 20 m x 20 m square, ordered so that any prefix is
// spread over the square.
constexpr std::array<std::array<double, 2>, 16> kLattice{{
    {-7.5, -7.5}, {7.5, 7.5},   {-7.5, 7.5},  {7.5, -7.5},
    {-2.5, -2.5}, {2.5, 2.5},   {-2.5, 2.5},  {2.5, -2.5},
    {-7.5, -2.5}, {7.5, 2.5},   {-2.5, 7.5},  {2.5, -7.5},
    {-7.5, 2.5},  {7.5, -2.5},  {2.5, 7.5},   {-2.5, -7.5},
}};

void check_finite(const Position3D& p, const char* what) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw ConfigError(std::string(what) + ": non-finite coordinate");
    }
    if (p.z < 0.0) throw ConfigError(std::string(what) + ": negative height");
}

std::vector<Position3D> linear_track(Position3D start, Position3D step, int slots) {
    std::vector<Position3D> track;
    track.reserve(static_cast<std::size_t>(slots));
    for (int l = 0; l < slots; ++l) track.push_back(start + static_cast<double>(l) * step);
    return track;
}

void extend_track(std::vector<Position3D>& track, int slots, Position3D fallback_step) {
    if (track.empty()) throw ConfigError("empty trajectory");
    const Position3D step = track.size() >= 2 ? track[track.size() - 1] - track[track.size() - 2]
                                              : fallback_step;
    while (static_cast<int>(track.size()) < slots) track.push_back(track.back() + step);
    track.resize(static_cast<std::size_t>(slots));
}

}  // namespace

double distance(const Position3D& a, const Position3D& b) {
    const Position3D d = a - b;
    return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

double link_angle(const Position3D& tx, const Position3D& rx) {
    const double d = distance(tx, rx);
    if (!(d > 0.0)) throw std::invalid_argument("link_angle: coincident positions");
    return std::asin(std::clamp((rx.z - tx.z) / d, -1.0, 1.0));
}

LinkGeometry link_geometry(const Position3D& tx, const Position3D& rx) {
    return {distance(tx, rx), link_angle(tx, rx), link_angle(rx, tx)};
}

SlotGeometry geometry_at_slot(const ScenarioConfig& cfg, int slot) {
    if (slot < 0 || slot >= cfg.slots) {
        throw std::out_of_range("geometry_at_slot: slot " + std::to_string(slot) + " outside [0, " +
                                std::to_string(cfg.slots) + ")");
    }
    const auto l = static_cast<std::size_t>(slot);
    SlotGeometry g;
    const bool with_ris = cfg.ris_elements > 0;
    if (with_ris) g.bs_ris = link_geometry(cfg.bs, cfg.ris);
    for (const auto& track : cfg.luav) {
        g.bs_luav.push_back(link_geometry(cfg.bs, track.at(l)));
        if (with_ris) g.ris_luav.push_back(link_geometry(cfg.ris, track.at(l)));
    }
    g.bs_uuav = link_geometry(cfg.bs, cfg.uuav.at(l));
    if (with_ris) g.ris_uuav = link_geometry(cfg.ris, cfg.uuav.at(l));
    return g;
}

Position3D DefaultLayout::bs() { return {0.0, 0.0, 30.0}; }
Position3D DefaultLayout::ris() { return {kLuavCenterX, kLuavCenterY, 30.0}; }

Position3D DefaultLayout::luav_start(int k) {
    if (k < 0 || k >= static_cast<int>(kLattice.size())) {
        throw ConfigError("default layout supports at most 16 L-UAVs");
    }
    const auto& p = kLattice[static_cast<std::size_t>(k)];
    return {kLuavCenterX + p[0], kLuavCenterY + p[1], kUavHeight};
}

Position3D DefaultLayout::luav_step(int k) {
    static constexpr std::array<std::array<double, 2>, 4> kHeadings{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    const auto& h = kHeadings[static_cast<std::size_t>(k % 4)];
    return {kDriftPerSlot * h[0], kDriftPerSlot * h[1], 0.0};
}

Position3D DefaultLayout::uuav_start() { return {-4.0, -6.0, kUavHeight}; }
Position3D DefaultLayout::uuav_step() { return {kDriftPerSlot, 0.0, 0.0}; }

void apply_default_layout(ScenarioConfig& cfg) {
    cfg.bs = DefaultLayout::bs();
    cfg.ris = DefaultLayout::ris();
    cfg.luav.clear();
    for (int k = 0; k < cfg.users; ++k) {
        cfg.luav.push_back(linear_track(DefaultLayout::luav_start(k), DefaultLayout::luav_step(k), cfg.slots));
    }
    cfg.uuav = linear_track(DefaultLayout::uuav_start(), DefaultLayout::uuav_step(), cfg.slots);
}

void set_user_count(ScenarioConfig& cfg, int users) {
    if (users < 1) throw ConfigError("K must be at least 1");
    cfg.users = users;
    if (static_cast<int>(cfg.luav.size()) > users) {
        cfg.luav.resize(static_cast<std::size_t>(users));
    }
    for (int k = static_cast<int>(cfg.luav.size()); k < users; ++k) {
        cfg.luav.push_back(linear_track(DefaultLayout::luav_start(k), DefaultLayout::luav_step(k), cfg.slots));
    }
}

void set_slot_count(ScenarioConfig& cfg, int slots) {
    if (slots < 1) throw ConfigError("L must be at least 1");
    cfg.slots = slots;
    for (std::size_t k = 0; k < cfg.luav.size(); ++k) {
        extend_track(cfg.luav[k], slots, DefaultLayout::luav_step(static_cast<int>(k)));
    }
    extend_track(cfg.uuav, slots, DefaultLayout::uuav_step());
}

ScenarioConfig default_scenario() {
    ScenarioConfig cfg;
    apply_default_layout(cfg);
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.antennas < 1) throw ConfigError("M must be at least 1");
    if (cfg.ris_elements < 0) throw ConfigError("N must be non-negative");
    if (cfg.users < 1) throw ConfigError("K must be at least 1");
    if (cfg.slots < 1) throw ConfigError("L must be at least 1");
    if (!std::isfinite(cfg.p_max_dbm)) throw ConfigError("p_max_dbm must be finite");
    // -inf encodes a vanishing radar floor.
    if (std::isnan(cfg.gamma_db) || cfg.gamma_db == INFINITY) throw ConfigError("gamma_db must be finite or -inf");
    if (!std::isfinite(cfg.sigma_k_dbm) || !std::isfinite(cfg.sigma_t_dbm)) {
        throw ConfigError("noise powers must be finite");
    }
    if (!std::isfinite(cfg.beta0_db)) throw ConfigError("beta0_db must be finite");
    for (double a : {cfg.alpha.bs_ris, cfg.alpha.ris_luav, cfg.alpha.bs_uuav, cfg.alpha.ris_uuav, cfg.alpha.bs_luav}) {
        if (!std::isfinite(a) || a < 0.0) throw ConfigError("path-loss exponents must be finite and >= 0");
    }
    for (double k : {cfg.kappa_db.bs_ris, cfg.kappa_db.ris_luav, cfg.kappa_db.bs_luav}) {
        if (std::isnan(k)) throw ConfigError("Rician factors must not be NaN");
    }
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (cfg.max_outer < 1) throw ConfigError("max_outer must be at least 1");
    if (static_cast<int>(cfg.luav.size()) != cfg.users) {
        throw ConfigError("expected " + std::to_string(cfg.users) + " L-UAV trajectories, got " +
                          std::to_string(cfg.luav.size()));
    }
    const auto slots = static_cast<std::size_t>(cfg.slots);
    if (cfg.uuav.size() != slots) throw ConfigError("U-UAV trajectory length differs from L");
    for (const auto& track : cfg.luav) {
        if (track.size() != slots) throw ConfigError("L-UAV trajectory length differs from L");
    }

    check_finite(cfg.bs, "bs_pos");
    check_finite(cfg.ris, "ris_pos");
    const bool with_ris = cfg.ris_elements > 0;
    auto check_link = [](const Position3D& a, const Position3D& b, const std::string& what) {
        const double d = distance(a, b);
        if (!(d >= 1.0)) {
            std::ostringstream os;
            os << what << ": distance " << d << " m is below the 1 m reference distance";
            throw ConfigError(os.str());
        }
    };
    if (with_ris) check_link(cfg.bs, cfg.ris, "BS-RIS");
    for (std::size_t l = 0; l < slots; ++l) {
        const std::string slot = " (slot " + std::to_string(l) + ")";
        check_finite(cfg.uuav[l], "uuav position");
        check_link(cfg.bs, cfg.uuav[l], "BS-U-UAV" + slot);
        if (with_ris) check_link(cfg.ris, cfg.uuav[l], "RIS-U-UAV" + slot);
        for (std::size_t k = 0; k < cfg.luav.size(); ++k) {
            const std::string who = " user " + std::to_string(k) + slot;
            check_finite(cfg.luav[k][l], "luav position");
            check_link(cfg.bs, cfg.luav[k][l], "BS-L-UAV" + who);
            if (with_ris) check_link(cfg.ris, cfg.luav[k][l], "RIS-L-UAV" + who);
        }
    }
}

}  // namespace risisac
