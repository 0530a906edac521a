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

#include "risisac/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "risisac/rng.hpp"

namespace risisac {

ScenarioConfig scheme_config(Scheme scheme, const ScenarioConfig& cfg) {
    ScenarioConfig out = cfg;
    if (scheme == Scheme::NoRis) out.ris_elements = 0;
    return out;
}

AoOptions scheme_options(Scheme scheme, const ScenarioConfig& cfg) {
    AoOptions opts;
    opts.epsilon = cfg.epsilon;
    opts.max_outer = cfg.max_outer;
    opts.optimize_phases = scheme == Scheme::Proposed;
    return opts;
}

SlotProblem slot_problem(const ScenarioConfig& cfg, int slot) {
    const SlotGeometry geo = geometry_at_slot(cfg, slot);
    return make_slot_problem(sample_channels(cfg, geo, slot, cfg.seed), cfg);
}

std::vector<SlotSolution> run_scheme(Scheme scheme, const ScenarioConfig& base) {
    const ScenarioConfig cfg = scheme_config(scheme, base);
    validate(cfg);
    const AoOptions opts = scheme_options(scheme, cfg);
    std::vector<SlotSolution> out;
    out.reserve(static_cast<std::size_t>(cfg.slots));
    for (int l = 0; l < cfg.slots; ++l) {
        const SlotProblem prob = slot_problem(cfg, l);
        auto rng = make_stream(cfg.seed, static_cast<std::uint64_t>(l), Stream::InitPhase);
        out.push_back(run_slot(prob, rng, opts));
    }
    return out;
}

SweepSpec make_sweep_spec(const SweepConfig& sweep) {
    SweepSpec spec;
    spec.param = sweep.param;
    spec.grid = sweep.grid;
    spec.seeds = sweep.seeds;
    if (spec.seeds.empty())
        for (std::uint64_t s = 1; s <= 20; ++s) spec.seeds.push_back(s);
    spec.schemes = sweep.schemes;
    return spec;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParam param, double value) {
    ScenarioConfig cfg = base;
    auto as_count = [value](const char* what) {
        if (value != std::floor(value) || value < 0.0) throw ConfigError(std::string(what) + " must be a whole number");
        return static_cast<int>(value);
    };
    switch (param) {
        case SweepParam::PMaxDbm: cfg.p_max_dbm = value; break;
        case SweepParam::NElements: cfg.ris_elements = as_count("n_elements"); break;
        case SweepParam::AlphaBsLuav: cfg.alpha.bs_luav = value; break;
        case SweepParam::KUsers: set_user_count(cfg, as_count("k_users")); break;
        case SweepParam::MAntennas: cfg.antennas = as_count("m_antennas"); break;
    }
    validate(cfg);
    return cfg;
}

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RIS_ISAC_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

SweepResult run_sweep(const SweepSpec& spec, const ScenarioConfig& base, int jobs) {
    if (spec.grid.empty() || spec.seeds.empty() || spec.schemes.empty())
        throw std::invalid_argument("run_sweep: empty grid, seed list or scheme list");
    SweepResult result;
    for (Scheme scheme : spec.schemes)
        for (double value : spec.grid)
            for (std::uint64_t seed : spec.seeds) {
                SweepRow row;
                row.scheme = scheme;
                row.param = spec.param;
                row.param_value = value;
                row.seed = seed;
                result.rows.push_back(row);
            }

    parallel_for(result.rows.size(), jobs, [&](std::size_t i) {
        SweepRow& row = result.rows[i];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ScenarioConfig cfg = apply_sweep_value(base, spec.param, row.param_value);
            cfg.seed = row.seed;
            const auto slots = run_scheme(row.scheme, cfg);
            double rate = 0.0, snr = 0.0, power = 0.0;
            int iters = 0;
            bool feasible = true;
            for (const auto& s : slots) {
                rate += s.final_sum_rate;
                snr += s.final_radar_snr_db;
                power += s.power_w;
                iters += s.iterations;
                feasible = feasible && s.feasible;
            }
            const double L = static_cast<double>(slots.size());
            row.sum_rate = rate / L;
            row.radar_snr_db = snr / L;
            row.power_w = power / L;
            row.iterations = iters;
            row.status = feasible ? "ok" : "infeasible";
        } catch (const InfeasibleError&) {
            row.status = "infeasible";
        } catch (const std::exception&) {
            row.status = "error";
        }
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
    const auto old = os.precision(12);
    os << "scheme,param,param_value,seed,sum_rate_bps_hz,radar_snr_db,power_w,iterations,wall_ms,status\n";
    for (const auto& r : result.rows) {
        os << to_string(r.scheme) << ',' << to_string(r.param) << ',' << r.param_value << ',' << r.seed << ',';
        if (r.status == "ok")
            os << r.sum_rate << ',' << r.radar_snr_db << ',' << r.power_w << ',' << r.iterations;
        else
            os << ",,,";
        os << ',' << std::llround(r.wall_ms * 1000.0) / 1000.0 << ',' << r.status << '\n';
    }
    os.precision(old);
}

double mean_of(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("mean_of: empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double standard_error(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("standard_error: empty sample");
    if (x.size() == 1) return 0.0;
    const double m = mean_of(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    const double n = static_cast<double>(x.size());
    return std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

std::vector<SummaryRow> summarize(const SweepResult& result) {
    if (result.rows.empty()) throw std::invalid_argument("summarize: empty result");
    struct Acc {
        std::vector<double> rate, snr;
        int infeasible = 0;
    };
    std::vector<std::pair<Scheme, double>> order;
    std::map<std::pair<int, double>, Acc> acc;
    for (const auto& r : result.rows) {
        const auto key = std::make_pair(static_cast<int>(r.scheme), r.param_value);
        if (!acc.count(key)) order.emplace_back(r.scheme, r.param_value);
        Acc& a = acc[key];
        if (r.status == "ok") {
            a.rate.push_back(r.sum_rate);
            a.snr.push_back(r.radar_snr_db);
        } else {
            ++a.infeasible;
        }
    }
    std::vector<SummaryRow> out;
    for (const auto& [scheme, value] : order) {
        const Acc& a = acc.at({static_cast<int>(scheme), value});
        SummaryRow s;
        s.scheme = scheme;
        s.param_value = value;
        s.count = static_cast<int>(a.rate.size());
        s.infeasible = a.infeasible;
        if (s.count > 0) {
            s.mean = mean_of(a.rate);
            s.stderr_ = standard_error(a.rate);
            s.mean_radar_snr_db = mean_of(a.snr);
        } else {
            s.mean = s.stderr_ = s.mean_radar_snr_db = std::nan("");
        }
        out.push_back(s);
    }
    return out;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> rank(x.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = r;
        i = j + 1;
    }
    return rank;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need two equal-length samples");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double mx = mean_of(rx), my = mean_of(ry);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace risisac
