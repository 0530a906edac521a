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
#include <vector>

#include "risisac/types.hpp"

namespace risisac {

struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Position3D operator+(Position3D a, Position3D b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Position3D operator-(Position3D a, Position3D b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Position3D operator*(double s, Position3D a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Position3D&, const Position3D&) = default;
};

// One value per propagation link class.
template <typename T>
struct PerLink {
    T bs_ris{};
    T ris_luav{};
    T bs_uuav{};
    T ris_uuav{};
    T bs_luav{};
};

// Physical and algorithmic parameters of one scenario. Powers are stored in
// dBm/dB as configured; conversion to watts happens at the point of use.
struct ScenarioConfig {
    int antennas = 6;      // M
    int ris_elements = 32; // N, 0 disables the RIS
    int users = 4;         // K
    int slots = 5;         // L

    double p_max_dbm = 33.0;
    double gamma_db = 4.0;
    double sigma_k_dbm = -90.0;
    double sigma_t_dbm = -90.0;
    double beta0_db = -30.0;

    // Rician factors; the sensing links (bs_uuav, ris_uuav) are pure LoS and
    // ignore their entries.
    PerLink<double> kappa_db{3.0, 3.0, 0.0, 0.0, 3.0};
    PerLink<double> alpha{2.2, 2.3, 2.4, 2.2, 3.5};

    Position3D bs;
    Position3D ris;
    std::vector<std::vector<Position3D>> luav;  // [user][slot]
    std::vector<Position3D> uuav;               // [slot]

    std::uint64_t seed = 1;

    // Alternating optimization controls.
    double epsilon = 1e-3;
    int max_outer = 50;
};

struct LinkGeometry {
    double distance = 0.0;   // meters
    double departure = 0.0;  // elevation seen from the transmitter, radians
    double arrival = 0.0;    // elevation seen from the receiver, radians
};

struct SlotGeometry {
    LinkGeometry bs_ris;
    std::vector<LinkGeometry> bs_luav;
    std::vector<LinkGeometry> ris_luav;
    LinkGeometry bs_uuav;
    LinkGeometry ris_uuav;
};

double distance(const Position3D& a, const Position3D& b);

// Elevation angle of rx as seen from tx, asin((rx.z - tx.z) / d). The arrays
// are vertical ULAs, so this is the angle whose sine enters the steering
// vectors. Throws std::invalid_argument for coincident positions.
double link_angle(const Position3D& tx, const Position3D& rx);

LinkGeometry link_geometry(const Position3D& tx, const Position3D& rx);

// Geometry of slot `slot` (0-based). Throws std::out_of_range.
SlotGeometry geometry_at_slot(const ScenarioConfig& cfg, int slot);

// Layout used when a configuration does not place the UAVs explicitly.
struct DefaultLayout {
    static Position3D bs();
    static Position3D ris();
    // Start position and per-slot displacement of L-UAV k. Positions only
    // depend on k, so growing K keeps the first users in place.
    static Position3D luav_start(int k);
    static Position3D luav_step(int k);
    static Position3D uuav_start();
    static Position3D uuav_step();
};

// Rebuilds all trajectories from the default layout for the current K and L.
void apply_default_layout(ScenarioConfig& cfg);

// Resizes the user population. Existing trajectories are kept; users beyond
// the current count come from the default layout.
void set_user_count(ScenarioConfig& cfg, int users);

// Resizes trajectories after a change of L by extending each linear drift.
void set_slot_count(ScenarioConfig& cfg, int slots);

ScenarioConfig default_scenario();

// Throws ConfigError naming the first violated invariant.
void validate(const ScenarioConfig& cfg);

}  // namespace risisac
