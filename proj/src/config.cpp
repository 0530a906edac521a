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

#include "risisac/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

namespace risisac {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::Proposed: return "proposed";
        case Scheme::RandomPhase: return "random-phase";
        case Scheme::NoRis: return "no-ris";
    }
    return "unknown";
}

std::string to_string(SweepParam p) {
    switch (p) {
        case SweepParam::PMaxDbm: return "p_max_dbm";
        case SweepParam::NElements: return "n_elements";
        case SweepParam::AlphaBsLuav: return "alpha_bs_luav";
        case SweepParam::KUsers: return "k_users";
        case SweepParam::MAntennas: return "m_antennas";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string& tag) {
    for (Scheme s : {Scheme::Proposed, Scheme::RandomPhase, Scheme::NoRis})
        if (to_string(s) == tag) return s;
    throw ConfigError("unknown scheme '" + tag + "'");
}

SweepParam parse_sweep_param(const std::string& name) {
    for (SweepParam p : {SweepParam::PMaxDbm, SweepParam::NElements, SweepParam::AlphaBsLuav, SweepParam::KUsers,
                         SweepParam::MAntennas})
        if (to_string(p) == name) return p;
    throw ConfigError("unknown sweep parameter '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& scalar_keys() {
    static const std::map<std::string, Setter> keys = [] {
        std::map<std::string, Setter> k;
        auto dbl = [](double ScenarioConfig::*field) {
            return [field](RunConfig& c, const std::string& key, const std::string& v) {
                c.scenario.*field = parse_double(v, key);
            };
        };
        auto link = [](PerLink<double> ScenarioConfig::*table, double PerLink<double>::*field) {
            return [table, field](RunConfig& c, const std::string& key, const std::string& v) {
                (c.scenario.*table).*field = parse_double(v, key);
            };
        };
        k["p_max_dbm"] = dbl(&ScenarioConfig::p_max_dbm);
        k["gamma_db"] = dbl(&ScenarioConfig::gamma_db);
        k["sigma_k_dbm"] = dbl(&ScenarioConfig::sigma_k_dbm);
        k["sigma_t_dbm"] = dbl(&ScenarioConfig::sigma_t_dbm);
        k["beta0_db"] = dbl(&ScenarioConfig::beta0_db);
        k["epsilon"] = dbl(&ScenarioConfig::epsilon);
        k["kappa_bs_ris_db"] = link(&ScenarioConfig::kappa_db, &PerLink<double>::bs_ris);
        k["kappa_ris_luav_db"] = link(&ScenarioConfig::kappa_db, &PerLink<double>::ris_luav);
        k["kappa_bs_luav_db"] = link(&ScenarioConfig::kappa_db, &PerLink<double>::bs_luav);
        k["alpha_bs_ris"] = link(&ScenarioConfig::alpha, &PerLink<double>::bs_ris);
        k["alpha_ris_luav"] = link(&ScenarioConfig::alpha, &PerLink<double>::ris_luav);
        k["alpha_bs_uuav"] = link(&ScenarioConfig::alpha, &PerLink<double>::bs_uuav);
        k["alpha_ris_uuav"] = link(&ScenarioConfig::alpha, &PerLink<double>::ris_uuav);
        k["alpha_bs_luav"] = link(&ScenarioConfig::alpha, &PerLink<double>::bs_luav);
        k["M"] = [](RunConfig& c, const std::string& key, const std::string& v) {
            c.scenario.antennas = static_cast<int>(parse_int(v, key));
        };
        k["N"] = [](RunConfig& c, const std::string& key, const std::string& v) {
            c.scenario.ris_elements = static_cast<int>(parse_int(v, key));
        };
        k["max_outer"] = [](RunConfig& c, const std::string& key, const std::string& v) {
            c.scenario.max_outer = static_cast<int>(parse_int(v, key));
        };
        k["seed"] = [](RunConfig& c, const std::string& key, const std::string& v) {
            c.scenario.seed = parse_u64(v, key);
        };
        k["sweep_param"] = [](RunConfig& c, const std::string&, const std::string& v) {
            c.sweep.param = parse_sweep_param(v);
        };
        k["sweep_grid"] = [](RunConfig& c, const std::string& key, const std::string& v) {
            c.sweep.grid.clear();
            for (const auto& item : split(v, ',')) c.sweep.grid.push_back(parse_double(item, key));
            if (c.sweep.grid.empty()) throw ConfigError(key + ": empty grid");
        };
        k["sweep_seeds"] = [](RunConfig& c, const std::string& key, const std::string& v) {
            c.sweep.seeds.clear();
            for (const auto& item : split(v, ',')) {
                const auto dash = item.find('-', 1);
                if (dash == std::string::npos) {
                    c.sweep.seeds.push_back(parse_u64(item, key));
                    continue;
                }
                const auto lo = parse_u64(item.substr(0, dash), key);
                const auto hi = parse_u64(item.substr(dash + 1), key);
                if (hi < lo || hi - lo > 1000000) throw ConfigError(key + ": bad seed range '" + item + "'");
                for (auto s = lo; s <= hi; ++s) c.sweep.seeds.push_back(s);
            }
            if (c.sweep.seeds.empty()) throw ConfigError(key + ": empty seed list");
        };
        k["sweep_schemes"] = [](RunConfig& c, const std::string&, const std::string& v) {
            c.sweep.schemes.clear();
            for (const auto& item : split(v, ',')) c.sweep.schemes.push_back(parse_scheme(item));
            if (c.sweep.schemes.empty()) throw ConfigError("sweep_schemes: empty list");
        };
        return k;
    }();
    return keys;
}

const std::regex kUserKey(R"(luav([0-9]+)_(start|step))");
const std::regex kUserSlotKey(R"(luav([0-9]+)_slot([0-9]+))");
const std::regex kTargetSlotKey(R"(uuav_slot([0-9]+))");

bool is_layout_key(const std::string& key) {
    return key == "K" || key == "L" || key == "bs_pos" || key == "ris_pos" || key == "uuav_start" ||
           key == "uuav_step" || std::regex_match(key, kUserKey) || std::regex_match(key, kUserSlotKey) ||
           std::regex_match(key, kTargetSlotKey);
}

int index_in(const std::string& text, int count, const std::string& key) {
    const auto i = parse_int(text, key);
    if (i < 1 || i > count) throw ConfigError(key + ": index out of range 1.." + std::to_string(count));
    return static_cast<int>(i - 1);
}

}  // namespace

double parse_double(const std::string& text, const std::string& key) {
    const std::string s = trim(text);
    double out = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (s.empty() || ec != std::errc() || ptr != last || std::isnan(out))
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    return out;
}

std::int64_t parse_int(const std::string& text, const std::string& key) {
    const std::string s = trim(text);
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
    const std::string s = trim(text);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(key + ": expected an unsigned integer, got '" + text + "'");
    return out;
}

Position3D parse_position(const std::string& text, const std::string& key) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw ConfigError(key + ": expected x,y,z, got '" + text + "'");
    return {parse_double(parts[0], key), parse_double(parts[1], key), parse_double(parts[2], key)};
}

Settings parse_settings(const std::string& text, const std::string& origin) {
    Settings out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Settings read_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_settings(ss.str(), path);
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected KEY=VALUE, got '" + text + "'");
    auto key = trim(text.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key in '" + text + "'");
    return {key, trim(text.substr(eq + 1))};
}

bool is_known_key(const std::string& key) { return scalar_keys().count(key) > 0 || is_layout_key(key); }

RunConfig build_config(const Settings& settings) {
    RunConfig cfg;
    for (const auto& [key, value] : settings) {
        if (!is_known_key(key)) throw ConfigError("unknown key '" + key + "'");
        auto it = scalar_keys().find(key);
        if (it != scalar_keys().end()) it->second(cfg, key, value);
    }

    auto& sc = cfg.scenario;
    if (auto it = settings.find("K"); it != settings.end()) sc.users = static_cast<int>(parse_int(it->second, "K"));
    if (auto it = settings.find("L"); it != settings.end()) sc.slots = static_cast<int>(parse_int(it->second, "L"));
    if (sc.users < 1) throw ConfigError("K must be at least 1");
    if (sc.slots < 1) throw ConfigError("L must be at least 1");
    apply_default_layout(sc);

    if (auto it = settings.find("bs_pos"); it != settings.end()) sc.bs = parse_position(it->second, "bs_pos");
    if (auto it = settings.find("ris_pos"); it != settings.end()) sc.ris = parse_position(it->second, "ris_pos");

    // Linear tracks first, then per-slot overrides.
    std::vector<Position3D> starts, steps;
    for (int k = 0; k < sc.users; ++k) {
        starts.push_back(DefaultLayout::luav_start(k));
        steps.push_back(DefaultLayout::luav_step(k));
    }
    Position3D t_start = DefaultLayout::uuav_start();
    Position3D t_step = DefaultLayout::uuav_step();
    bool track_changed = false;
    std::smatch m;
    for (const auto& [key, value] : settings) {
        if (std::regex_match(key, m, kUserKey)) {
            const int k = index_in(m[1].str(), sc.users, key);
            (m[2].str() == "start" ? starts : steps)[static_cast<std::size_t>(k)] = parse_position(value, key);
            track_changed = true;
        } else if (key == "uuav_start") {
            t_start = parse_position(value, key);
            track_changed = true;
        } else if (key == "uuav_step") {
            t_step = parse_position(value, key);
            track_changed = true;
        }
    }
    if (track_changed) {
        for (int k = 0; k < sc.users; ++k)
            for (int l = 0; l < sc.slots; ++l)
                sc.luav[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                    starts[static_cast<std::size_t>(k)] + static_cast<double>(l) * steps[static_cast<std::size_t>(k)];
        for (int l = 0; l < sc.slots; ++l) sc.uuav[static_cast<std::size_t>(l)] = t_start + static_cast<double>(l) * t_step;
    }
    for (const auto& [key, value] : settings) {
        if (std::regex_match(key, m, kUserSlotKey)) {
            const int k = index_in(m[1].str(), sc.users, key);
            const int l = index_in(m[2].str(), sc.slots, key);
            sc.luav[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = parse_position(value, key);
        } else if (std::regex_match(key, m, kTargetSlotKey)) {
            const int l = index_in(m[1].str(), sc.slots, key);
            sc.uuav[static_cast<std::size_t>(l)] = parse_position(value, key);
        }
    }
    validate(sc);
    return cfg;
}

std::string render_settings(const RunConfig& cfg) {
    const auto& s = cfg.scenario;
    std::ostringstream os;
    os.precision(17);
    auto pos = [&](const Position3D& p) {
        std::ostringstream ps;
        ps.precision(17);
        ps << p.x << ',' << p.y << ',' << p.z;
        return ps.str();
    };
    os << "M = " << s.antennas << "\nN = " << s.ris_elements << "\nK = " << s.users << "\nL = " << s.slots << '\n';
    os << "p_max_dbm = " << s.p_max_dbm << "\ngamma_db = " << s.gamma_db << '\n';
    os << "sigma_k_dbm = " << s.sigma_k_dbm << "\nsigma_t_dbm = " << s.sigma_t_dbm << '\n';
    os << "beta0_db = " << s.beta0_db << '\n';
    os << "kappa_bs_ris_db = " << s.kappa_db.bs_ris << "\nkappa_ris_luav_db = " << s.kappa_db.ris_luav
       << "\nkappa_bs_luav_db = " << s.kappa_db.bs_luav << '\n';
    os << "alpha_bs_ris = " << s.alpha.bs_ris << "\nalpha_ris_luav = " << s.alpha.ris_luav
       << "\nalpha_bs_uuav = " << s.alpha.bs_uuav << "\nalpha_ris_uuav = " << s.alpha.ris_uuav
       << "\nalpha_bs_luav = " << s.alpha.bs_luav << '\n';
    os << "bs_pos = " << pos(s.bs) << "\nris_pos = " << pos(s.ris) << '\n';
    for (std::size_t k = 0; k < s.luav.size(); ++k)
        for (std::size_t l = 0; l < s.luav[k].size(); ++l)
            os << "luav" << k + 1 << "_slot" << l + 1 << " = " << pos(s.luav[k][l]) << '\n';
    for (std::size_t l = 0; l < s.uuav.size(); ++l) os << "uuav_slot" << l + 1 << " = " << pos(s.uuav[l]) << '\n';
    os << "seed = " << s.seed << "\nepsilon = " << s.epsilon << "\nmax_outer = " << s.max_outer << '\n';
    os << "sweep_param = " << to_string(cfg.sweep.param) << "\nsweep_grid = ";
    for (std::size_t i = 0; i < cfg.sweep.grid.size(); ++i) os << (i ? "," : "") << cfg.sweep.grid[i];
    os << '\n';
    if (!cfg.sweep.seeds.empty()) {
        os << "sweep_seeds = ";
        for (std::size_t i = 0; i < cfg.sweep.seeds.size(); ++i) os << (i ? "," : "") << cfg.sweep.seeds[i];
        os << '\n';
    }
    os << "sweep_schemes = ";
    for (std::size_t i = 0; i < cfg.sweep.schemes.size(); ++i) os << (i ? "," : "") << to_string(cfg.sweep.schemes[i]);
    os << '\n';
    return os.str();
}

}  // namespace risisac
