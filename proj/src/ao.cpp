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

#include "risisac/ao.hpp"

#include <cmath>
#include <sstream>

#include "risisac/sca.hpp"

namespace risisac {

namespace {

// Sum-rate slack for the acceptance tests inside one outer iteration.
constexpr double kAcceptSlack = 1e-12;

CVec stack_beams(const BeamformerState& s) {
    const auto M = s.w_s.size();
    CVec x(M * (s.users() + 1));
    for (int k = 0; k < s.users(); ++k) x.segment(k * M, M) = s.W[static_cast<std::size_t>(k)];
    x.tail(M) = s.w_s;
    return x;
}

BeamformerState unstack_beams(const CVec& x, const BeamformerState& like) {
    BeamformerState s = like;
    const auto M = like.w_s.size();
    for (int k = 0; k < like.users(); ++k) s.W[static_cast<std::size_t>(k)] = x.segment(k * M, M);
    s.w_s = x.tail(M);
    return s;
}

CVec composite(const SlotProblem& prob, const CVec& v) {
    const auto& ch = prob.channels;
    return target_composite(ch.g_dt, ch.g_rt, v, ch.G);
}

double interference_free_bound(const SlotProblem& prob, const std::vector<CVec>& H) {
    double best = 0.0;
    for (const auto& h : H) best = std::max(best, h.squaredNorm());
    return static_cast<double>(H.size()) * std::log2(1.0 + prob.p_max * best / prob.sigma2);
}

StepResult p3_step(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux,
                   const SolveOptions& qp, bool need_improvement) {
    StepResult out{state, {}, false};
    const ConvexQPInstance inst = build_p3(prob, state, aux);
    SolveOptions opts = qp;
    opts.x0 = stack_beams(state);
    out.report = solve(inst, opts);
    if (out.report.status == SolveStatus::Infeasible || !out.report.x.allFinite()) return out;
    BeamformerState cand = unstack_beams(out.report.x, state);
    if (!is_feasible(prob, cand)) return out;
    if (need_improvement) {
        const double before = slot_sum_rate(prob, state);
        if (slot_sum_rate(prob, cand) < before - kAcceptSlack * (1.0 + std::abs(before))) return out;
    }
    out.state = std::move(cand);
    out.accepted = true;
    return out;
}

}  // namespace

SlotProblem make_slot_problem(const ChannelSet& channels, const ScenarioConfig& cfg) {
    SlotProblem p;
    p.channels = channels;
    p.p_max = dbm_to_watts(cfg.p_max_dbm);
    p.gamma = std::isinf(cfg.gamma_db) && cfg.gamma_db < 0 ? 0.0 : db_to_linear(cfg.gamma_db);
    p.sigma2 = dbm_to_watts(cfg.sigma_k_dbm);
    p.sigma_t2 = dbm_to_watts(cfg.sigma_t_dbm);
    return p;
}

double slot_sum_rate(const SlotProblem& prob, const BeamformerState& state) {
    return sum_rate(effective_channels(prob.channels, state.v), state, prob.sigma2);
}

double slot_radar_snr(const SlotProblem& prob, const BeamformerState& state) {
    return radar_snr(composite(prob, state.v), state, prob.sigma_t2);
}

bool is_feasible(const SlotProblem& prob, const BeamformerState& state) {
    if (!(total_power(state) <= prob.p_max * (1.0 + 1e-8))) return false;
    if (prob.gamma > 0.0 && !(slot_radar_snr(prob, state) >= prob.gamma * (1.0 - 1e-6))) return false;
    return true;
}

BeamformerState initialize_beams(const SlotProblem& prob, const CVec& v) {
    const auto& ch = prob.channels;
    const int K = ch.users();
    const int M = ch.antennas();
    const auto H = effective_channels(ch, v);
    const CVec u = composite(prob, v);

    auto unit = [M](const CVec& x) {
        const double n = x.norm();
        if (n > 0.0) return CVec(x / n);
        CVec e = CVec::Zero(M);
        e(0) = 1.0;
        return e;
    };
    BeamformerState dir;
    dir.v = v;
    for (const auto& h : H) dir.W.push_back(unit(h));
    dir.w_s = unit(u);

    auto with_share = [&](double sensing_share) {
        BeamformerState s = dir;
        const double pc = std::sqrt((1.0 - sensing_share) * prob.p_max / K);
        for (auto& w : s.W) w *= pc;
        s.w_s *= std::sqrt(sensing_share * prob.p_max);
        return s;
    };

    constexpr double kDefaultShare = 0.2;
    BeamformerState s = with_share(kDefaultShare);
    if (prob.gamma == 0.0 || slot_radar_snr(prob, s) >= prob.gamma) return s;

    const BeamformerState full = with_share(1.0);
    const double best = slot_radar_snr(prob, full);
    if (!(best >= prob.gamma)) {
        std::ostringstream os;
        os.precision(4);
        os << "radar SNR floor unreachable: full-power sensing beam gives " << linear_to_db(best)
           << " dB, floor is " << linear_to_db(prob.gamma) << " dB";
        throw InfeasibleError(os.str());
    }
    // The SNR is affine and increasing in the sensing share; keep the upper end.
    double lo = kDefaultShare;
    double hi = 1.0;
    for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slot_radar_snr(prob, with_share(mid)) >= prob.gamma ? hi : lo) = mid;
    }
    return with_share(hi);
}

BeamformerState initialize(const SlotProblem& prob, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    CVec v(prob.channels.elements());
    for (Eigen::Index n = 0; n < v.size(); ++n) v(n) = std::polar(1.0, phase(rng));
    return initialize_beams(prob, v);
}

ConvexQPInstance build_p3(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux) {
    const auto& ch = prob.channels;
    const int K = state.users();
    const int M = ch.antennas();
    const auto H = effective_channels(ch, state.v);

    CMat block = CMat::Zero(M, M);
    for (int k = 0; k < K; ++k) block += std::norm(aux.c(k)) * H[static_cast<std::size_t>(k)] * H[static_cast<std::size_t>(k)].adjoint();

    ConvexQPInstance inst;
    const int n = M * (K + 1);
    inst.Q = CMat::Zero(n, n);
    inst.b = CVec::Zero(n);
    for (int j = 0; j <= K; ++j) inst.Q.block(j * M, j * M, M, M) = block;
    for (int k = 0; k < K; ++k)
        inst.b.segment(k * M, M) = 2.0 * std::sqrt(1.0 + aux.r(k)) * aux.c(k) * H[static_cast<std::size_t>(k)];

    if (prob.gamma > 0.0) {
        AffineConstraint row = linearized_sensing_w(composite(prob, state.v), state, prob.gamma, prob.sigma_t2);
        const double scale = prob.gamma * prob.sigma_t2;
        row.a /= scale;
        row.offset /= scale;
        inst.affine.push_back(std::move(row));
    }
    inst.ball = prob.p_max;
    return inst;
}

ConvexQPInstance build_p4(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux,
                          double modulus_slack) {
    const auto& ch = prob.channels;
    const int K = state.users();
    const int N = ch.elements();

    ConvexQPInstance inst;
    inst.Q = CMat::Zero(N, N);
    inst.b = CVec::Zero(N);
    for (int k = 0; k < K; ++k) {
        const double ck2 = std::norm(aux.c(k));
        for (int j = 0; j <= K; ++j) {
            const CVec& w = j < K ? state.W[static_cast<std::size_t>(j)] : state.w_s;
            const CVec Ht = reshape_comm(ch.h_d[static_cast<std::size_t>(k)], ch.h_r[static_cast<std::size_t>(k)], ch.G, w);
            const auto a = Ht.head(N);
            const cplx e = std::conj(Ht(N));
            inst.Q.noalias() += ck2 * a * a.adjoint();
            inst.b -= (2.0 * ck2 * e) * a;
            if (j == k) inst.b += (2.0 * std::sqrt(1.0 + aux.r(k)) * aux.c(k)) * a;
        }
    }

    if (prob.gamma > 0.0) {
        const CMat Gt = reshape_target(ch.G, ch.g_rt, ch.g_dt);
        const AffineConstraint full = linearized_sensing_v(state, state.v, Gt, prob.gamma, prob.sigma_t2);
        const double scale = prob.gamma * prob.sigma_t2;
        AffineConstraint row;
        row.a = full.a.head(N) / scale;
        row.offset = (full.offset + std::real(full.a(N))) / scale;
        inst.affine.push_back(std::move(row));
    }
    const double floor = (1.0 - modulus_slack) * (1.0 - modulus_slack);
    for (int n = 0; n < N; ++n) {
        const AffineConstraint scalar = linearized_modulus(state.v(n), floor);
        AffineConstraint row;
        row.a = CVec::Zero(N);
        row.a(n) = scalar.a(0);
        row.offset = scalar.offset;
        inst.affine.push_back(std::move(row));
        inst.caps.push_back({n, 1.0});
    }
    return inst;
}

StepResult solve_p3(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux,
                    const SolveOptions& qp) {
    return p3_step(prob, state, aux, qp, true);
}

StepResult solve_p4(const SlotProblem& prob, const BeamformerState& state, const AuxVars& aux,
                    double modulus_slack, const SolveOptions& qp) {
    StepResult out{state, {}, false};
    if (prob.channels.elements() == 0) return out;
    const ConvexQPInstance inst = build_p4(prob, state, aux, modulus_slack);
    SolveOptions opts = qp;
    opts.x0 = state.v;
    out.report = solve(inst, opts);
    if (out.report.status == SolveStatus::Infeasible || !out.report.x.allFinite()) return out;

    // The sensing surrogate is only tangent, so confirm the true SNR and pull
    // back toward the incumbent when it fails. The subproblem is convex, so
    // every point of the segment stays feasible for it and no worse than v_hat.
    const double before = slot_sum_rate(prob, state);
    BeamformerState cand = state;
    const CVec step = out.report.x - state.v;
    double beta = 1.0;
    for (int tries = 0; tries < 40; ++tries, beta *= 0.5) {
        cand.v = state.v + beta * step;
        if (is_feasible(prob, cand)) break;
    }
    if (!is_feasible(prob, cand)) return out;
    if (slot_sum_rate(prob, cand) < before - kAcceptSlack * (1.0 + std::abs(before))) return out;

    // Prefer the unit-modulus point when it is at least as good.
    BeamformerState unit = cand;
    unit.v = cand.v.cwiseQuotient(cand.v.cwiseAbs().cast<cplx>());
    if (is_feasible(prob, unit) && slot_sum_rate(prob, unit) >= slot_sum_rate(prob, cand)) cand = std::move(unit);

    out.state = std::move(cand);
    out.accepted = true;
    return out;
}

BeamformerState finalize(const SlotProblem& prob, const BeamformerState& state, const SolveOptions& qp) {
    BeamformerState s = state;
    for (Eigen::Index n = 0; n < s.v.size(); ++n) {
        const double mag = std::abs(s.v(n));
        if (!(mag > 1e-9)) throw InvariantError("finalize: RIS coefficient collapsed to zero");
        s.v(n) = std::polar(1.0, std::arg(s.v(n)));
    }
    const auto H = effective_channels(prob.channels, s.v);
    AuxVars aux;
    aux.r = update_r(H, s, prob.sigma2);
    aux.c = update_c(H, s, aux.r, prob.sigma2);
    const bool feasible = is_feasible(prob, s);
    StepResult res = p3_step(prob, s, aux, qp, feasible);
    if (res.accepted) return res.state;
    if (feasible) return s;
    // Projection broke the SNR floor and the beam update could not repair it:
    // restart the beams from matched filters on the projected phases.
    BeamformerState fresh = initialize_beams(prob, s.v);
    const auto H2 = effective_channels(prob.channels, fresh.v);
    aux.r = update_r(H2, fresh, prob.sigma2);
    aux.c = update_c(H2, fresh, aux.r, prob.sigma2);
    res = p3_step(prob, fresh, aux, qp, true);
    return res.accepted ? res.state : fresh;
}

SlotSolution run_slot(const SlotProblem& prob, const BeamformerState& init, const AoOptions& opts) {
    SlotSolution sol;
    BeamformerState state = init;
    auto record = [&](int it) {
        sol.trace.push_back({it, slot_sum_rate(prob, state), linear_to_db(slot_radar_snr(prob, state)),
                             total_power(state)});
    };
    record(0);
    const bool phases = opts.optimize_phases && prob.channels.elements() > 0;
    AuxVars aux;
    for (int it = 1; it <= opts.max_outer; ++it) {
        const double prev = sol.trace.back().sum_rate;
        auto H = effective_channels(prob.channels, state.v);
        aux.r = update_r(H, state, prob.sigma2);
        aux.c = update_c(H, state, aux.r, prob.sigma2);

        StepResult p3 = solve_p3(prob, state, aux, opts.qp);
        if (!p3.accepted) ++sol.rejected_p3;
        state = std::move(p3.state);

        if (phases) {
            aux.c = update_c(H, state, aux.r, prob.sigma2);
            StepResult p4 = solve_p4(prob, state, aux, opts.modulus_slack, opts.qp);
            if (!p4.accepted) ++sol.rejected_p4;
            state = std::move(p4.state);
        }

        record(it);
        sol.iterations = it;
        const double cur = sol.trace.back().sum_rate;
        if (cur < prev - 1e-6 * (1.0 + std::abs(prev))) {
            std::ostringstream os;
            os.precision(15);
            os << "sum-rate decreased at iteration " << it << ": " << prev << " -> " << cur;
            throw InvariantError(os.str());
        }
        const double bound = interference_free_bound(prob, effective_channels(prob.channels, state.v));
        if (cur > bound * (1.0 + 1e-9) + 1e-12) throw InvariantError("sum-rate exceeds the interference-free bound");
        if (cur - prev <= opts.epsilon * std::abs(prev)) {
            sol.converged = true;
            break;
        }
    }
    sol.aux = aux;
    sol.state = finalize(prob, state, opts.qp);
    sol.final_sum_rate = slot_sum_rate(prob, sol.state);
    sol.final_radar_snr_db = linear_to_db(slot_radar_snr(prob, sol.state));
    sol.power_w = total_power(sol.state);
    sol.feasible = is_feasible(prob, sol.state);
    for (Eigen::Index n = 0; n < sol.state.v.size(); ++n)
        if (std::abs(std::abs(sol.state.v(n)) - 1.0) > 1e-12) sol.feasible = false;
    if (!sol.feasible) sol.diagnostic = "final state violates the power or radar SNR constraint";
    return sol;
}

SlotSolution run_slot(const SlotProblem& prob, std::mt19937_64& rng, const AoOptions& opts) {
    return run_slot(prob, initialize(prob, rng), opts);
}

}  // namespace risisac
