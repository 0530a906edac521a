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
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "risisac/ao.hpp"
#include "risisac/bench.hpp"
#include "risisac/rng.hpp"

using namespace risisac;

namespace {

ScenarioConfig with_seed(std::uint64_t seed) {
    ScenarioConfig cfg = default_scenario();
    cfg.seed = seed;
    return cfg;
}

BeamformerState init_state(const SlotProblem& prob, std::uint64_t seed, int slot) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(slot), Stream::InitPhase);
    return initialize(prob, rng);
}

AuxVars aux_for(const SlotProblem& prob, const BeamformerState& s) {
    const auto H = effective_channels(prob.channels, s.v);
    AuxVars aux;
    aux.r = update_r(H, s, prob.sigma2);
    aux.c = update_c(H, s, aux.r, prob.sigma2);
    return aux;
}

double quad_at(const SlotProblem& prob, const BeamformerState& s, const AuxVars& aux) {
    return quad_objective(effective_channels(prob.channels, s.v), s, aux.r, aux.c, prob.sigma2);
}

CVec stacked(const BeamformerState& s) {
    const auto M = s.w_s.size();
    CVec x(M * (s.users() + 1));
    for (int k = 0; k < s.users(); ++k) x.segment(k * M, M) = s.W[static_cast<std::size_t>(k)];
    x.tail(M) = s.w_s;
    return x;
}

// K = M = 1 without a surface and without the sensing floor.
SlotProblem scalar_problem(cplx h, double p_max, double sigma2) {
    SlotProblem p;
    p.channels.G = CMat(0, 1);
    p.channels.h_d = {CVec::Constant(1, h)};
    p.channels.h_r = {CVec(0)};
    p.channels.g_dt = CVec::Constant(1, 1.0);
    p.channels.g_rt = CVec(0);
    p.p_max = p_max;
    p.gamma = 0.0;
    p.sigma2 = sigma2;
    p.sigma_t2 = sigma2;
    return p;
}

}  // namespace

TEST_CASE("initialize: split without a sensing floor") {
    ScenarioConfig cfg = default_scenario();
    cfg.gamma_db = -INFINITY;
    const SlotProblem prob = slot_problem(cfg, 0);
    CHECK(prob.gamma == 0.0);
    const BeamformerState s = init_state(prob, cfg.seed, 0);
    double comm = 0.0;
    for (const auto& w : s.W) {
        CHECK(w.squaredNorm() == doctest::Approx(0.8 * prob.p_max / 4).epsilon(1e-12));
        comm += w.squaredNorm();
    }
    CHECK(comm == doctest::Approx(0.8 * prob.p_max).epsilon(1e-12));
    CHECK(s.w_s.squaredNorm() == doctest::Approx(0.2 * prob.p_max).epsilon(1e-12));
    for (Eigen::Index n = 0; n < s.v.size(); ++n) CHECK(std::abs(std::abs(s.v(n)) - 1.0) <= 1e-15);
}

TEST_CASE("initialize: unreachable floor is reported") {
    ScenarioConfig cfg = default_scenario();
    cfg.gamma_db = 60.0;
    const SlotProblem prob = slot_problem(cfg, 0);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(initialize(prob, rng), InfeasibleError);
    cfg.gamma_db = 4.0;
    cfg.p_max_dbm = -40.0;
    CHECK_THROWS_AS(initialize(slot_problem(cfg, 0), rng), InfeasibleError);
}

TEST_CASE("initialize: seeded default scenario is deterministic and feasible") {
    const ScenarioConfig cfg = with_seed(7);
    for (int l = 0; l < cfg.slots; ++l) {
        const SlotProblem prob = slot_problem(cfg, l);
        const BeamformerState a = init_state(prob, 7, l);
        const BeamformerState b = init_state(prob, 7, l);
        CHECK(a.v == b.v);
        CHECK(a.w_s == b.w_s);
        for (std::size_t k = 0; k < a.W.size(); ++k) CHECK(a.W[k] == b.W[k]);
        CHECK(slot_radar_snr(prob, a) >= prob.gamma);
        CHECK(total_power(a) <= prob.p_max * (1.0 + 1e-12));
    }
}

TEST_CASE("solve_p3: single user without surface recovers the matched filter") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        SlotProblem p;
        p.channels.G = CMat(0, 4);
        p.channels.h_d = {oracle::random_cvec(rng, 4, 1e-4)};
        p.channels.h_r = {CVec(0)};
        p.channels.g_dt = oracle::random_cvec(rng, 4, 1e-4);
        p.channels.g_rt = CVec(0);
        p.p_max = 2.0;
        p.gamma = 0.0;
        p.sigma2 = 1e-12;
        p.sigma_t2 = 1e-12;
        BeamformerState s;
        s.W = {oracle::random_cvec(rng, 4)};
        s.w_s = oracle::random_cvec(rng, 4, 0.1);
        s.v = CVec(0);
        const StepResult res = solve_p3(p, s, aux_for(p, s));
        REQUIRE(res.accepted);
        const CVec& h = p.channels.h_d[0];
        const CVec& w = res.state.W[0];
        CHECK(std::abs(h.dot(w)) >= (1.0 - 1e-6) * h.norm() * w.norm());
        CHECK(total_power(res.state) <= p.p_max * (1.0 + 1e-8));
    }
}

TEST_CASE("incumbent satisfies its own linearized constraints") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ScenarioConfig cfg = with_seed(seed);
        const SlotProblem prob = slot_problem(cfg, static_cast<int>(seed % 5));
        const BeamformerState s = init_state(prob, seed, static_cast<int>(seed % 5));
        const AuxVars aux = aux_for(prob, s);
        CHECK(build_p3(prob, s, aux).max_violation(stacked(s)) <= 1e-12);
        const ConvexQPInstance p4 = build_p4(prob, s, aux, 0.1);
        CHECK(p4.max_violation(s.v) <= 1e-12);
        for (const auto& cap : p4.caps) CHECK(std::abs(std::norm(s.v(cap.index)) - cap.limit2) <= 1e-12);
    }
}

TEST_CASE("P3 and P4 steps do not lower the surrogate objective") {
    for (int t = 0; t < 50; ++t) {
        const auto seed = static_cast<std::uint64_t>(100 + t);
        const int slot = t % 5;
        const SlotProblem prob = slot_problem(with_seed(seed), slot);
        BeamformerState s = init_state(prob, seed, slot);
        AuxVars aux = aux_for(prob, s);
        const double q0 = quad_at(prob, s, aux);
        const StepResult p3 = solve_p3(prob, s, aux);
        const double q1 = quad_at(prob, p3.state, aux);
        CHECK(q1 >= q0 - 1e-8);

        s = p3.state;
        aux.c = update_c(effective_channels(prob.channels, s.v), s, aux.r, prob.sigma2);
        const double q2 = quad_at(prob, s, aux);
        const StepResult p4 = solve_p4(prob, s, aux);
        CHECK(quad_at(prob, p4.state, aux) >= q2 - 1e-8);
        CHECK(is_feasible(prob, p4.state));
    }
}

TEST_CASE("solve_p4 without a surface is a no-op") {
    ScenarioConfig cfg = default_scenario();
    cfg.ris_elements = 0;
    const SlotProblem prob = slot_problem(cfg, 0);
    const BeamformerState s = init_state(prob, cfg.seed, 0);
    const StepResult res = solve_p4(prob, s, aux_for(prob, s));
    CHECK_FALSE(res.accepted);
    CHECK(res.state.v.size() == 0);
    CHECK(res.state.w_s == s.w_s);
}

TEST_CASE("finalize keeps unit phases and restores feasibility") {
    const SlotProblem prob = slot_problem(default_scenario(), 1);
    const BeamformerState s = init_state(prob, 1, 1);
    const BeamformerState f = finalize(prob, s);
    CHECK((f.v - s.v).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(is_feasible(prob, f));
    CHECK(slot_sum_rate(prob, f) >= slot_sum_rate(prob, s) - 1e-12 * (1.0 + slot_sum_rate(prob, s)));

    // shrunken phases are projected back to the unit circle
    BeamformerState shrunk = s;
    shrunk.v *= 0.93;
    const BeamformerState g = finalize(prob, shrunk);
    for (Eigen::Index n = 0; n < g.v.size(); ++n) CHECK(std::abs(std::abs(g.v(n)) - 1.0) <= 1e-15);
    CHECK(is_feasible(prob, g));
}

TEST_CASE("run_slot output is feasible with unit phases") {
    const AoOptions opts;
    for (int t = 0; t < 50; ++t) {
        const auto seed = static_cast<std::uint64_t>(200 + t / 5);
        const int slot = t % 5;
        const SlotProblem prob = slot_problem(with_seed(seed), slot);
        auto rng = make_stream(seed, static_cast<std::uint64_t>(slot), Stream::InitPhase);
        const SlotSolution sol = run_slot(prob, rng, opts);
        CHECK(sol.feasible);
        CHECK(slot_radar_snr(prob, sol.state) >= prob.gamma * (1.0 - 1e-6));
        CHECK(total_power(sol.state) <= prob.p_max * (1.0 + 1e-8));
        for (Eigen::Index n = 0; n < sol.state.v.size(); ++n) CHECK(std::abs(std::abs(sol.state.v(n)) - 1.0) <= 1e-15);
        for (std::size_t i = 1; i < sol.trace.size(); ++i)
            CHECK(sol.trace[i].sum_rate >= sol.trace[i - 1].sum_rate - 1e-6 * (1.0 + std::abs(sol.trace[i - 1].sum_rate)));
        CHECK(static_cast<int>(sol.trace.size()) == sol.iterations + 1);
    }
}

TEST_CASE("single-user scalar channel reaches the closed-form rate") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> db(-20.0, 20.0);
    for (int t = 0; t < 20; ++t) {
        const cplx h = oracle::random_cvec(rng, 1)(0);
        const double p = std::pow(10.0, db(rng) / 10.0);
        const SlotProblem prob = scalar_problem(h, p, 0.5);
        std::mt19937_64 init(static_cast<std::uint64_t>(t));
        const SlotSolution sol = run_slot(prob, init, AoOptions{});
        const double expect = std::log2(1.0 + p * std::norm(h) / 0.5);
        CHECK(sol.iterations <= 2);
        CHECK(std::abs(sol.final_sum_rate - expect) <= 1e-6 * expect);
    }
}

TEST_CASE("rates stay under the interference-free bound") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const ScenarioConfig cfg = with_seed(seed);
        const auto slots = run_scheme(Scheme::Proposed, cfg);
        for (int l = 0; l < cfg.slots; ++l) {
            const SlotProblem prob = slot_problem(cfg, l);
            const auto& sol = slots[static_cast<std::size_t>(l)];
            double best = 0.0;
            for (const auto& h : effective_channels(prob.channels, sol.state.v)) best = std::max(best, h.squaredNorm());
            CHECK(sol.final_sum_rate <= cfg.users * std::log2(1.0 + prob.p_max * best / prob.sigma2));
        }
    }
}

TEST_CASE("slot results do not depend on evaluation order") {
    const ScenarioConfig cfg = with_seed(3);
    const auto forward = run_scheme(Scheme::Proposed, cfg);
    for (int l = cfg.slots - 1; l >= 0; --l) {
        const SlotProblem prob = slot_problem(cfg, l);
        auto rng = make_stream(cfg.seed, static_cast<std::uint64_t>(l), Stream::InitPhase);
        const SlotSolution sol = run_slot(prob, rng, scheme_options(Scheme::Proposed, cfg));
        const auto& ref = forward[static_cast<std::size_t>(l)];
        CHECK(sol.final_sum_rate == ref.final_sum_rate);
        CHECK(sol.iterations == ref.iterations);
        CHECK(sol.state.v == ref.state.v);
    }
}
