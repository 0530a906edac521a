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

#include "risisac/qsolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace risisac {

double ConvexQPInstance::objective(const CVec& x) const { return std::real(b.dot(x)) - std::real(x.dot(Q * x)); }

double ConvexQPInstance::max_violation(const CVec& x) const {
    double worst = 0.0;
    for (const auto& row : affine) worst = std::max(worst, -row.value(x));
    if (ball) worst = std::max(worst, x.squaredNorm() / *ball - 1.0);
    for (const auto& cap : caps) worst = std::max(worst, std::norm(x(cap.index)) / cap.limit2 - 1.0);
    return worst;
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::MaxIter: return "max-iter";
    }
    return "unknown";
}

void check_instance(const ConvexQPInstance& inst) {
    const auto n = inst.b.size();
    if (inst.Q.rows() != n || inst.Q.cols() != n) throw std::invalid_argument("qsolver: Q/b dimension mismatch");
    if (!inst.Q.allFinite() || !inst.b.allFinite()) throw std::invalid_argument("qsolver: non-finite data");
    const double qn = inst.Q.norm();
    if ((inst.Q - inst.Q.adjoint()).norm() > 1e-10 * std::max(1.0, qn))
        throw std::invalid_argument("qsolver: Q is not Hermitian");
    if (n > 0 && qn > 0.0) {
        const CMat Qh = 0.5 * (inst.Q + inst.Q.adjoint());
        const double lo = Eigen::SelfAdjointEigenSolver<CMat>(Qh, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        if (lo < -1e-9 * qn) throw std::invalid_argument("qsolver: Q is not positive semidefinite");
    }
    for (const auto& row : inst.affine)
        if (row.a.size() != n || !row.a.allFinite() || !std::isfinite(row.offset))
            throw std::invalid_argument("qsolver: malformed affine constraint");
    if (inst.ball && !(*inst.ball > 0.0 && std::isfinite(*inst.ball)))
        throw std::invalid_argument("qsolver: ball radius must be positive");
    for (const auto& cap : inst.caps)
        if (cap.index < 0 || cap.index >= n || !(cap.limit2 > 0.0))
            throw std::invalid_argument("qsolver: malformed modulus cap");
}

namespace {

constexpr double kMu = 20.0;
constexpr double kArmijo = 0.25;

// Real-composite problem in scaled variables y = z / R, objective
// phi(y) = y'Qy - b'y divided by S. Every slack is normalized to O(1).
struct RealProblem {
    int n = 0;   // complex dimension
    int n2 = 0;  // real dimension
    double R = 1.0;
    double S = 1.0;
    RMat Q;
    RVec b;
    std::vector<RVec> A;  // unit rows
    std::vector<double> o;
    std::vector<std::vector<int>> support;
    bool ball = false;
    std::vector<std::pair<int, double>> caps;  // complex index, scaled limit^2

    int m() const { return static_cast<int>(A.size()) + (ball ? 1 : 0) + static_cast<int>(caps.size()); }

    double phi(const RVec& y) const { return y.dot(Q * y) - b.dot(y); }

    // Smallest slack at y.
    double min_slack(const RVec& y) const {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < A.size(); ++j) lo = std::min(lo, A[j].dot(y) + o[j]);
        if (ball) lo = std::min(lo, 1.0 - y.squaredNorm());
        for (const auto& [i, ell] : caps) lo = std::min(lo, 1.0 - (y(i) * y(i) + y(i + n) * y(i + n)) / ell);
        return lo;
    }
};

RVec embed(const CVec& x) {
    RVec z(2 * x.size());
    z << x.real(), x.imag();
    return z;
}

CVec unembed(const RVec& z) {
    const auto n = z.size() / 2;
    CVec x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = cplx(z(i), z(i + n));
    return x;
}

RealProblem build_problem(const ConvexQPInstance& inst) {
    RealProblem P;
    P.n = inst.dim();
    P.n2 = 2 * P.n;
    const CMat Qh = 0.5 * (inst.Q + inst.Q.adjoint());
    RMat Qr(P.n2, P.n2);
    Qr << Qh.real(), -Qh.imag(), Qh.imag(), Qh.real();
    const RVec br = embed(inst.b);

    P.R = inst.ball ? std::sqrt(*inst.ball) : 1.0;
    const double scale = std::max(P.R * P.R * Qr.norm(), P.R * br.norm());
    P.S = scale > 0.0 ? scale : 1.0;
    P.Q = (P.R * P.R / P.S) * Qr;
    P.b = (P.R / P.S) * br;

    for (const auto& row : inst.affine) {
        RVec a = P.R * embed(row.a);
        const double na = a.norm();
        if (na == 0.0) {
            if (row.offset >= 0.0) continue;  // always satisfied
            // Constant violated row; keep it so phase 1 certifies infeasibility.
            a.setZero();
            P.A.push_back(a);
            P.o.push_back(-1.0);
            P.support.emplace_back();
            continue;
        }
        std::vector<int> idx;
        for (int i = 0; i < P.n2; ++i)
            if (a(i) != 0.0) idx.push_back(i);
        P.A.push_back(a / na);
        P.o.push_back(row.offset / na);
        P.support.push_back(std::move(idx));
    }
    P.ball = inst.ball.has_value();
    for (const auto& cap : inst.caps) P.caps.emplace_back(cap.index, cap.limit2 / (P.R * P.R));
    return P;
}

// t * objective - sum log(slack). In phase 1 the objective is the shift
// sigma stored as the last coordinate and every slack is s_j + sigma.
struct Merit {
    const RealProblem& P;
    bool phase1 = false;
    double t = 1.0;

    int dim() const { return P.n2 + (phase1 ? 1 : 0); }

    bool value(const RVec& x, double& f) const {
        const auto y = x.head(P.n2);
        const double sig = phase1 ? x(P.n2) : 0.0;
        double acc = 0.0;
        for (std::size_t j = 0; j < P.A.size(); ++j) {
            const double s = P.A[j].dot(y) + P.o[j] + sig;
            if (!(s > 0.0)) return false;
            acc -= std::log(s);
        }
        if (P.ball) {
            const double s = 1.0 - y.squaredNorm() + sig;
            if (!(s > 0.0)) return false;
            acc -= std::log(s);
        }
        for (const auto& [i, ell] : P.caps) {
            const double s = 1.0 - (y(i) * y(i) + y(i + P.n) * y(i + P.n)) / ell + sig;
            if (!(s > 0.0)) return false;
            acc -= std::log(s);
        }
        f = t * (phase1 ? sig : P.phi(y)) + acc;
        return std::isfinite(f);
    }

    bool derivs(const RVec& x, double& f, RVec& g, RMat& H) const {
        if (!value(x, f)) return false;
        const int d = dim();
        const int n2 = P.n2;
        const auto y = x.head(n2);
        const double sig = phase1 ? x(n2) : 0.0;
        g = RVec::Zero(d);
        H = RMat::Zero(d, d);
        if (phase1) {
            g(n2) = t;
        } else {
            g.head(n2) = t * (2.0 * (P.Q * y) - P.b);
            H.topLeftCorner(n2, n2) = (2.0 * t) * P.Q;
        }
        for (std::size_t j = 0; j < P.A.size(); ++j) {
            const double s = P.A[j].dot(y) + P.o[j] + sig;
            const auto& idx = P.support[j];
            const RVec& a = P.A[j];
            const double inv = 1.0 / s;
            const double inv2 = inv * inv;
            for (int p : idx) {
                g(p) -= a(p) * inv;
                for (int q : idx) H(p, q) += a(p) * a(q) * inv2;
                if (phase1) {
                    H(p, n2) += a(p) * inv2;
                    H(n2, p) += a(p) * inv2;
                }
            }
            if (phase1) {
                g(n2) -= inv;
                H(n2, n2) += inv2;
            }
        }
        if (P.ball) {
            const double s = 1.0 - y.squaredNorm() + sig;
            const double inv = 1.0 / s;
            // grad s = -2y, hess s = -2I
            g.head(n2) += (2.0 * inv) * y;
            H.topLeftCorner(n2, n2).noalias() += (4.0 * inv * inv) * (y * y.transpose());
            H.topLeftCorner(n2, n2).diagonal().array() += 2.0 * inv;
            if (phase1) {
                g(n2) -= inv;
                H.block(0, n2, n2, 1) += (-2.0 * inv * inv) * y;
                H.block(n2, 0, 1, n2) += (-2.0 * inv * inv) * y.transpose();
                H(n2, n2) += inv * inv;
            }
        }
        for (const auto& [i, ell] : P.caps) {
            const int r = i + P.n;
            const double s = 1.0 - (y(i) * y(i) + y(r) * y(r)) / ell + sig;
            const double inv = 1.0 / s;
            const double gi = -2.0 * y(i) / ell;
            const double gr = -2.0 * y(r) / ell;
            g(i) -= gi * inv;
            g(r) -= gr * inv;
            const double inv2 = inv * inv;
            H(i, i) += gi * gi * inv2 + 2.0 / ell * inv;
            H(r, r) += gr * gr * inv2 + 2.0 / ell * inv;
            H(i, r) += gi * gr * inv2;
            H(r, i) += gi * gr * inv2;
            if (phase1) {
                g(n2) -= inv;
                H(i, n2) += gi * inv2;
                H(n2, i) += gi * inv2;
                H(r, n2) += gr * inv2;
                H(n2, r) += gr * inv2;
                H(n2, n2) += inv2;
            }
        }
        return true;
    }
};

enum class CenterResult { Converged, Stalled, Budget, MaxSteps };

struct Workspace {
    int budget = 0;
    int used = 0;
    double ridge = 0.0;
    bool record = false;
    std::vector<IterateRecord> log;
};

// Solves H d = -g, regularizing when H is not numerically positive definite.
bool newton_direction(RMat& H, const RVec& g, RVec& d, Workspace& ws) {
    const int n = static_cast<int>(H.rows());
    double rho = 0.0;
    double added = 0.0;
    const double base = std::max(H.trace() / n, std::numeric_limits<double>::min());
    for (int attempt = 0; attempt < 12; ++attempt) {
        H.diagonal().array() += rho - added;
        added = rho;
        Eigen::LDLT<RMat> ldlt(H);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive() && (ldlt.vectorD().array() > 0.0).all()) {
            d = ldlt.solve(-g);
            if (d.allFinite()) {
                ws.ridge = std::max(ws.ridge, rho);
                return true;
            }
        }
        rho = rho == 0.0 ? 1e-12 * base : rho * 10.0;
    }
    return false;
}

CenterResult center(RVec& x, const Merit& merit, double decrement_tol, int max_steps, int stage, Workspace& ws,
                    const std::function<bool(const RVec&, const RVec&)>& done) {
    double f = 0.0;
    RVec g;
    RMat H;
    RVec d;
    for (int step = 0; step < max_steps; ++step) {
        if (ws.used >= ws.budget) return CenterResult::Budget;
        if (!merit.derivs(x, f, g, H)) return CenterResult::Stalled;
        if (!newton_direction(H, g, d, ws)) return CenterResult::Stalled;
        if (done(x, d)) return CenterResult::Converged;
        const double slope = g.dot(d);
        const double lambda2 = -slope;
        if (ws.record) ws.log.push_back({stage, ws.used, merit.t, f, std::sqrt(std::max(lambda2, 0.0))});
        // lambda2 / 2 estimates f - f*, which cannot be resolved below the roundoff of f.
        if (lambda2 / 2.0 <= std::max(decrement_tol, 1e-14 * (1.0 + std::abs(f)))) return CenterResult::Converged;
        double alpha = 1.0;
        double f_new = 0.0;
        while (!merit.value(x + alpha * d, f_new)) {
            alpha *= 0.5;
            if (alpha < 1e-14) return CenterResult::Stalled;
        }
        while (f_new > f + kArmijo * alpha * slope) {
            alpha *= 0.5;
            if (alpha < 1e-14 || !merit.value(x + alpha * d, f_new)) {
                // Roundoff floor: a tiny decrement means we are already centered.
                return lambda2 < 1e-9 ? CenterResult::Converged : CenterResult::Stalled;
            }
        }
        x += alpha * d;
        ++ws.used;
    }
    return CenterResult::MaxSteps;
}

// Lagrangian stationarity at y using the primal-dual multiplier estimate
// (1 - s_j'd / s_j) / (t s_j) taken from the Newton step d, clipped at 0.
double stationarity(const RealProblem& P, const RVec& y, const RVec& d, double t) {
    RVec r = 2.0 * (P.Q * y) - P.b;
    auto add = [&](double s, const RVec& ds) {
        const double lam = std::max(0.0, (1.0 - ds.dot(d) / s) / (t * s));
        r -= lam * ds;
    };
    for (std::size_t j = 0; j < P.A.size(); ++j) add(P.A[j].dot(y) + P.o[j], P.A[j]);
    if (P.ball) add(1.0 - y.squaredNorm(), -2.0 * y);
    for (const auto& [i, ell] : P.caps) {
        RVec ds = RVec::Zero(P.n2);
        ds(i) = -2.0 * y(i) / ell;
        ds(i + P.n) = -2.0 * y(i + P.n) / ell;
        add(1.0 - (y(i) * y(i) + y(i + P.n) * y(i + P.n)) / ell, ds);
    }
    return r.lpNorm<Eigen::Infinity>();
}

// Dykstra's alternating projection onto the intersection of the constraint sets.
RVec project(const RealProblem& P, const RVec& y0, int sweeps = 500) {
    const int sets = P.m();
    if (sets == 0) return y0;
    std::vector<RVec> inc(static_cast<std::size_t>(sets), RVec::Zero(P.n2));
    RVec y = y0;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        const RVec start = y;
        int j = 0;
        auto apply = [&](auto&& proj) {
            RVec tmp = y + inc[static_cast<std::size_t>(j)];
            RVec p = tmp;
            proj(p);
            inc[static_cast<std::size_t>(j)] = tmp - p;
            y = p;
            ++j;
        };
        for (std::size_t k = 0; k < P.A.size(); ++k) {
            apply([&](RVec& p) {
                const double v = P.A[k].dot(p) + P.o[k];
                if (v < 0.0) p -= v * P.A[k];
            });
        }
        if (P.ball) {
            apply([&](RVec& p) {
                const double nn = p.norm();
                if (nn > 1.0) p /= nn;
            });
        }
        for (const auto& [i, ell] : P.caps) {
            const int r = i + P.n;
            apply([&, i = i, r = r, ell = ell](RVec& p) {
                const double rad = std::hypot(p(i), p(r));
                const double lim = std::sqrt(ell);
                if (rad > lim) {
                    p(i) *= lim / rad;
                    p(r) *= lim / rad;
                }
            });
        }
        if ((y - start).lpNorm<Eigen::Infinity>() < 1e-15) break;
    }
    return y;
}

// Accelerated projected gradient on phi; returns the projected-gradient
// fixed-point residual through `residual`.
RVec projected_gradient(const RealProblem& P, const RVec& y0, int iters, double tol, double& residual) {
    double L = 0.0;
    if (P.Q.size() > 0) L = 2.0 * Eigen::SelfAdjointEigenSolver<RMat>(P.Q, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    if (!(L > 0.0)) L = 1.0;
    RVec y = project(P, y0);
    RVec z = y;
    double tk = 1.0;
    residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iters; ++it) {
        const RVec grad = 2.0 * (P.Q * z) - P.b;
        const RVec y_next = project(P, z - grad / L);
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        z = y_next + ((tk - 1.0) / tn) * (y_next - y);
        if (P.phi(y_next) > P.phi(y)) z = y_next;  // restart momentum
        const double step = (y_next - y).lpNorm<Eigen::Infinity>() * L;
        y = y_next;
        tk = tn;
        if (step < tol) {
            residual = step;
            break;
        }
        residual = step;
    }
    return y;
}

double affine_violation(const RealProblem& P, const RVec& y) { return std::max(0.0, -P.min_slack(y)); }

}  // namespace

SolveReport solve(const ConvexQPInstance& inst, const SolveOptions& opts) {
    check_instance(inst);
    SolveReport rep;
    const RealProblem P = build_problem(inst);
    Workspace ws;
    ws.budget = opts.max_iter;
    ws.record = opts.record_log;

    auto finish = [&](const RVec& y, SolveStatus status, double residual) {
        rep.x = unembed(P.R * y);
        rep.status = status;
        rep.kkt_residual = residual;
        rep.iterations = ws.used;
        rep.objective = inst.objective(rep.x);
        rep.ridge = ws.ridge;
        rep.log = std::move(ws.log);
        return rep;
    };

    if (P.n == 0) {
        const RVec y(0);
        // Only constant rows can remain.
        return finish(y, P.A.empty() ? SolveStatus::Optimal : SolveStatus::Infeasible, 0.0);
    }

    RVec y = RVec::Zero(P.n2);
    if (opts.x0.size() == P.n) y = embed(opts.x0) / P.R;
    const int m = P.m();

    if (m == 0) {
        RMat H = 2.0 * P.Q;
        RVec d;
        const RVec g = -P.b;
        if (!newton_direction(H, g, d, ws)) {
            d = Eigen::CompleteOrthogonalDecomposition<RMat>(2.0 * P.Q).solve(P.b);
        }
        const double res = (2.0 * (P.Q * d) - P.b).lpNorm<Eigen::Infinity>();
        ws.used = 1;
        return finish(d, res <= opts.kkt_tol ? SolveStatus::Optimal : SolveStatus::MaxIter, res);
    }

    // Phase 1: minimize sigma subject to s_j(y) + sigma > 0.
    constexpr double kInteriorMargin = 1e-6;
    if (!(P.min_slack(y) > kInteriorMargin)) {
        enum class Phase1 { Found, Infeasible, Budget };
        auto phase1 = [&](const RealProblem& Pp, RVec& yy) {
            const int mp = Pp.m();
            RVec x(Pp.n2 + 1);
            x.head(Pp.n2) = yy;
            x(Pp.n2) = std::max(0.0, -Pp.min_slack(yy)) + 1.0;
            // Start with t * sigma = O(m) so that far-infeasible points do not
            // need thousands of damped steps.
            Merit merit{Pp, true, std::min(1.0, mp / x(Pp.n2))};
            auto stop = [&](const RVec& xx, const RVec&) { return xx(Pp.n2) < -0.5; };
            Phase1 out = Phase1::Infeasible;
            while (true) {
                const auto res = center(x, merit, 1e-10, 50, 0, ws, stop);
                const double sig = x(Pp.n2);
                if (sig < 0.0) {
                    out = Phase1::Found;
                    break;
                }
                const double gap = mp / merit.t;
                if (res == CenterResult::Budget) {
                    out = Phase1::Budget;
                    break;
                }
                if (res == CenterResult::MaxSteps) continue;
                // Centered point: sigma - gap bounds the optimal shift from below.
                if (res == CenterResult::Converged && sig - gap > opts.feas_tol) break;
                if (gap < 1e-3 * opts.feas_tol || res == CenterResult::Stalled) break;
                merit.t *= kMu;
            }
            yy = x.head(Pp.n2);
            return out;
        };

        std::vector<bool> capped(static_cast<std::size_t>(P.n), false);
        for (const auto& [i, ell] : P.caps) capped[static_cast<std::size_t>(i)] = true;
        const bool bounded = P.ball || std::all_of(capped.begin(), capped.end(), [](bool c) { return c; });
        Phase1 res = Phase1::Infeasible;
        if (bounded) {
            res = phase1(P, y);
        } else {
            // An unbounded feasible set lets the barrier slide off to infinity
            // instead of lowering sigma. Search inside growing balls |y| <= rho,
            // written as the same problem in the variable y / rho.
            const RVec y0 = y;
            double rho = 10.0 * (1.0 + y0.norm());
            for (int attempt = 0; attempt < 3 && res == Phase1::Infeasible; ++attempt, rho *= 1e3) {
                RealProblem Pb = P;
                Pb.ball = true;
                for (auto& o : Pb.o) o /= rho;
                for (auto& [i, ell] : Pb.caps) ell /= rho * rho;
                RVec yb = y0 / rho;
                res = phase1(Pb, yb);
                y = rho * yb;
            }
        }
        if (res != Phase1::Found)
            return finish(y, res == Phase1::Budget ? SolveStatus::MaxIter : SolveStatus::Infeasible,
                          affine_violation(P, y));
    }

    // Phase 2: barrier path.
    Merit merit{P, false, 1.0};
    bool newton_failed = false;
    double residual = std::numeric_limits<double>::infinity();
    for (int stage = 1;; ++stage) {
        const double gap = m / merit.t;
        const bool final_stage = gap <= opts.kkt_tol * (1.0 + 1e-9);
        auto stop = [&](const RVec& yy, const RVec& d) {
            return final_stage && std::max(stationarity(P, yy, d, merit.t), gap) <= opts.kkt_tol;
        };
        const auto res = center(y, merit, final_stage ? 1e-18 : 1e-9, final_stage ? 100 : 50, stage, ws, stop);
        {
            double f = 0.0;
            RVec g, d;
            RMat H;
            residual = merit.derivs(y, f, g, H) && newton_direction(H, g, d, ws)
                           ? std::max(stationarity(P, y, d, merit.t), gap)
                           : std::numeric_limits<double>::infinity();
        }
        if (final_stage && residual <= opts.kkt_tol) return finish(y, SolveStatus::Optimal, residual);
        if (res == CenterResult::Budget) return finish(y, SolveStatus::MaxIter, residual);
        if (res == CenterResult::MaxSteps) continue;
        if (res == CenterResult::Stalled || final_stage) {
            newton_failed = true;
            break;
        }
        merit.t = std::min(merit.t * kMu, std::max(m / opts.kkt_tol, merit.t * 1.0001));
    }

    if (newton_failed) {
        // Projected gradient from the last strictly feasible iterate.
        rep.used_fallback = true;
        double pg_res = 0.0;
        const RVec yp = projected_gradient(P, y, 20000, opts.kkt_tol, pg_res);
        // Keep the barrier iterate if projection noise made the fallback worse.
        const double viol = affine_violation(P, yp);
        if (viol <= opts.feas_tol && P.phi(yp) <= P.phi(y)) {
            const bool ok = pg_res <= opts.kkt_tol;
            return finish(yp, ok ? SolveStatus::Optimal : SolveStatus::MaxIter, std::min(pg_res, residual));
        }
        return finish(y, residual <= opts.kkt_tol ? SolveStatus::Optimal : SolveStatus::MaxIter, residual);
    }
    return finish(y, SolveStatus::MaxIter, residual);
}

void write_iterate_log(const SolveReport& report, std::ostream& os) {
    os << "stage,iteration,barrier,merit,residual\n";
    os.precision(17);
    for (const auto& r : report.log) os << r.stage << ',' << r.iteration << ',' << r.barrier << ',' << r.merit << ',' << r.residual << '\n';
}

}  // namespace risisac
