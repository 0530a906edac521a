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
#include "risisac/sca.hpp"

using namespace risisac;

namespace {

CVec scalar(cplx x) {
    CVec v(1);
    v << x;
    return v;
}

BeamformerState random_beams(std::mt19937_64& rng, int M, int K, double scale = 1.0) {
    BeamformerState s;
    for (int k = 0; k < K; ++k) s.W.push_back(oracle::random_cvec(rng, M, scale));
    s.w_s = oracle::random_cvec(rng, M, scale);
    return s;
}

CVec stack(const BeamformerState& s) {
    const auto M = s.w_s.size();
    CVec x(M * (s.users() + 1));
    for (int k = 0; k < s.users(); ++k) x.segment(k * M, M) = s.W[static_cast<std::size_t>(k)];
    x.tail(M) = s.w_s;
    return x;
}

}  // namespace

TEST_CASE("quad_sensing_value examples") {
    CVec u(2), w(2);
    u << 1.0, cplx(0.0, 1.0);
    w << 1.0, 1.0 * cplx(0.0, 1.0);  // u^H w = 1 + 1 = 2
    CHECK(quad_sensing_value(u, w) == doctest::Approx(2.0 * 4.0));
    CVec perp(2);
    perp << cplx(0.0, 1.0), 1.0;  // u^H perp = i - i = 0
    CHECK(quad_sensing_value(u, perp) == 0.0);
    CHECK(quad_sensing_value(scalar(2.0), scalar(3.0)) == doctest::Approx(144.0).epsilon(1e-15));

    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        const CVec ur = oracle::random_cvec(rng, 5);
        const CVec wr = oracle::random_cvec(rng, 5);
        const double ref = oracle::sensing_power(ur, wr);
        CHECK(std::abs(quad_sensing_value(ur, wr) - ref) <= 1e-12 * ref);
    }
}

TEST_CASE("taylor_lb_quadratic tangency and origin value") {
    std::mt19937_64 rng(2);
    const CVec u = oracle::random_cvec(rng, 4);
    const CVec wh = oracle::random_cvec(rng, 4);
    const AffineConstraint lb = taylor_lb_quadratic(u, wh);
    const double f = quad_sensing_value(u, wh);
    CHECK(std::abs(lb.value(wh) - f) <= 1e-12 * f);
    CHECK(lb.value(CVec::Zero(4)) <= 0.0);
    CHECK(lb.value(CVec::Zero(4)) == doctest::Approx(-f));
    CHECK_THROWS_AS(taylor_lb_quadratic(u, wh.head(3)), std::invalid_argument);
}

TEST_CASE("taylor_lb_quadratic is a global lower bound") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> sc(0.01, 10.0);
    for (int t = 0; t < 10000; ++t) {
        const CVec u = oracle::random_cvec(rng, 4, sc(rng));
        const CVec w = oracle::random_cvec(rng, 4, sc(rng));
        const CVec wh = oracle::random_cvec(rng, 4, sc(rng));
        const double I = quad_sensing_value(u, w);
        REQUIRE(I - taylor_lb_quadratic(u, wh).value(w) >= -1e-12 * (1.0 + std::abs(I)));
    }
}

TEST_CASE("linearized_sensing_w examples") {
    std::mt19937_64 rng(4);
    const CVec u = oracle::random_cvec(rng, 3);
    const BeamformerState s = random_beams(rng, 3, 2);
    const double gamma = 1.7, sig = 0.3;
    const AffineConstraint row = linearized_sensing_w(u, s, gamma, sig);
    CHECK(row.a.size() == 9);
    const double snr = radar_snr(u, s, sig);
    CHECK(row.value(stack(s)) == doctest::Approx(snr * sig - gamma * sig).epsilon(1e-12));

    BeamformerState zero = s;
    for (auto& w : zero.W) w.setZero();
    zero.w_s.setZero();
    const AffineConstraint dead = linearized_sensing_w(u, zero, gamma, sig);
    CHECK(dead.a.cwiseAbs().maxCoeff() == 0.0);
    CHECK(dead.offset == doctest::Approx(-gamma * sig));
    CHECK(dead.value(stack(s)) < 0.0);
    CHECK_THROWS_AS(linearized_sensing_w(u, s, -1.0, sig), std::invalid_argument);
}

TEST_CASE("linearized_sensing_w implies the true SNR floor") {
    std::mt19937_64 rng(5);
    int satisfied = 0;
    for (int t = 0; t < 1000; ++t) {
        const CVec u = oracle::random_cvec(rng, 3);
        const BeamformerState hat = random_beams(rng, 3, 2);
        BeamformerState w = random_beams(rng, 3, 2, 0.5);
        for (std::size_t k = 0; k < w.W.size(); ++k) w.W[k] += hat.W[k];
        w.w_s += hat.w_s;
        const double gamma = 0.5 * radar_snr(u, hat, 1.0);
        if (linearized_sensing_w(u, hat, gamma, 1.0).value(stack(w)) >= 0.0) {
            ++satisfied;
            CHECK(radar_snr(u, w, 1.0) >= gamma * (1.0 - 1e-12));
        }
    }
    CHECK(satisfied > 200);
}

TEST_CASE("quartic_sensing_value cross-domain identity") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
        const CMat G = oracle::random_cmat(rng, 6, 3);
        const CVec g_rt = oracle::random_cvec(rng, 6);
        const CVec g_dt = oracle::random_cvec(rng, 3);
        const CVec v = oracle::random_phases(rng, 6);
        const CVec w = oracle::random_cvec(rng, 3);
        const CMat Gt = reshape_target(G, g_rt, g_dt);
        const CMat A = Gt.adjoint() * Gt;
        const CMat B = Gt.adjoint() * w * w.adjoint() * Gt;
        const double q = quartic_sensing_value(extend_phases(v), A, B);
        const double ref = quad_sensing_value(target_composite(g_dt, g_rt, v, G), w);
        CHECK(std::abs(q - ref) <= 1e-12 * ref);
    }
}

TEST_CASE("quartic_sensing_value degenerate cases") {
    std::mt19937_64 rng(7);
    // null space of A
    const CMat Gt = oracle::random_cmat(rng, 2, 4);
    const CMat A = Gt.adjoint() * Gt;
    const CVec w = oracle::random_cvec(rng, 2);
    const CMat B = Gt.adjoint() * w * w.adjoint() * Gt;
    Eigen::SelfAdjointEigenSolver<CMat> es(A);
    const CVec null = es.eigenvectors().col(0);
    CHECK(quartic_sensing_value(null, A, B) <= 1e-20);

    // N = 0: only the direct leg remains.
    const CVec g_dt = oracle::random_cvec(rng, 3);
    const CMat G0 = reshape_target(CMat(0, 3), CVec(0), g_dt);
    const CVec w3 = oracle::random_cvec(rng, 3);
    const double q = quartic_sensing_value(CVec::Ones(1), G0.adjoint() * G0, G0.adjoint() * w3 * w3.adjoint() * G0);
    const double ref = g_dt.squaredNorm() * std::norm(g_dt.dot(w3));
    CHECK(q == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("taylor_surrogate_quartic tangency in both forms") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        const CMat Gt = oracle::random_cmat(rng, 3, 5);
        const CVec w = oracle::random_cvec(rng, 3);
        const CVec vb = oracle::random_cvec(rng, 5);
        const CMat A = Gt.adjoint() * Gt;
        const CMat B = Gt.adjoint() * w * w.adjoint() * Gt;
        const double f = quartic_sensing_value(vb, A, B);
        const AffineConstraint s1 = taylor_surrogate_quartic(vb, A, B);
        const AffineConstraint s2 = taylor_surrogate_quartic(vb, Gt, w);
        CHECK(std::abs(s1.value(vb) - f) <= 1e-12 * f);
        CHECK(std::abs(s2.value(vb) - f) <= 1e-12 * f);
        CHECK((s1.a - s2.a).norm() <= 1e-12 * s1.a.norm());
        CHECK(s1.offset == doctest::Approx(s2.offset).epsilon(1e-12));
    }
}

TEST_CASE("taylor_surrogate_quartic scalar case") {
    const double a = 1.3, b = 0.4;
    const CMat A = CMat::Constant(1, 1, a);
    const CMat B = CMat::Constant(1, 1, b);
    const AffineConstraint s = taylor_surrogate_quartic(CVec::Ones(1), A, B);
    for (double t : {0.0, 0.5, 1.0, 2.0}) CHECK(s.value(scalar(t)) == doctest::Approx(4 * a * b * t - 3 * a * b));
}

TEST_CASE("taylor_surrogate_quartic gradient matches central differences") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int inst = 0; inst < 20; ++inst) {
        const CMat Gt = oracle::random_cmat(rng, 3, 5);
        const CVec w = oracle::random_cvec(rng, 3);
        const CVec vb = extend_phases(oracle::random_phases(rng, 4));
        const CMat A = Gt.adjoint() * Gt;
        const CMat B = Gt.adjoint() * w * w.adjoint() * Gt;
        const AffineConstraint s = taylor_surrogate_quartic(vb, A, B);
        const double h = 1e-4 * vb.norm();
        for (int dir = 0; dir < 20; ++dir) {
            CVec d(vb.size());
            for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = cplx(g(rng), g(rng));
            d /= d.norm();
            const double fd = (quartic_sensing_value(vb + h * d, A, B) - quartic_sensing_value(vb - h * d, A, B)) / (2 * h);
            const double an = std::real(s.a.dot(d));
            CHECK(std::abs(fd - an) <= 1e-5 * std::abs(fd));
        }
    }
}

TEST_CASE("linearized_sensing_v tangency and degenerate case") {
    std::mt19937_64 rng(10);
    const CMat G = oracle::random_cmat(rng, 6, 3);
    const CVec g_rt = oracle::random_cvec(rng, 6);
    const CVec g_dt = oracle::random_cvec(rng, 3);
    const CVec vh = oracle::random_phases(rng, 6);
    BeamformerState s = random_beams(rng, 3, 2);
    const CMat Gt = reshape_target(G, g_rt, g_dt);
    const double gamma = 2.0, sig = 0.7;
    const AffineConstraint row = linearized_sensing_v(s, vh, Gt, gamma, sig);
    const double snr = radar_snr(target_composite(g_dt, g_rt, vh, G), s, sig);
    CHECK(row.value(extend_phases(vh)) == doctest::Approx(snr * sig - gamma * sig).epsilon(1e-12));
    CHECK_THROWS_AS(linearized_sensing_v(s, vh.head(5), Gt, gamma, sig), std::invalid_argument);

    // Per-beam sum equals the sum of single-beam surrogates.
    AffineConstraint sum{CVec::Zero(7), -gamma * sig};
    for (int j = 0; j <= 2; ++j) {
        const AffineConstraint p = taylor_surrogate_quartic(extend_phases(vh), Gt, j < 2 ? s.W[static_cast<std::size_t>(j)] : s.w_s);
        sum.a += p.a;
        sum.offset += p.offset;
    }
    CHECK((sum.a - row.a).norm() <= 1e-12 * row.a.norm());
    CHECK(sum.offset == doctest::Approx(row.offset).epsilon(1e-12));

    // N = 0: the only coordinate is the constant 1 and the row is the true condition.
    const CMat G0 = reshape_target(CMat(0, 3), CVec(0), g_dt);
    const AffineConstraint flat = linearized_sensing_v(s, CVec(0), G0, gamma, sig);
    CHECK(flat.value(CVec::Ones(1)) == doctest::Approx(radar_snr(g_dt, s, sig) * sig - gamma * sig).epsilon(1e-12));
}

TEST_CASE("linearized_sensing_v lower-bound rate (diagnostic)") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 0.3);
    int sat = 0, held = 0;
    for (int t = 0; t < 1000; ++t) {
        const CMat G = oracle::random_cmat(rng, 5, 3);
        const CVec g_rt = oracle::random_cvec(rng, 5);
        const CVec g_dt = oracle::random_cvec(rng, 3);
        const CVec vh = oracle::random_phases(rng, 5);
        const BeamformerState s = random_beams(rng, 3, 2);
        const CMat Gt = reshape_target(G, g_rt, g_dt);
        const double gamma = 0.5 * radar_snr(target_composite(g_dt, g_rt, vh, G), s, 1.0);
        const AffineConstraint row = linearized_sensing_v(s, vh, Gt, gamma, 1.0);
        CVec v = vh;
        for (Eigen::Index n = 0; n < v.size(); ++n) v(n) *= std::polar(1.0, g(rng));
        if (row.value(extend_phases(v)) > 0.0) {
            ++sat;
            if (radar_snr(target_composite(g_dt, g_rt, v, G), s, 1.0) >= gamma) ++held;
        }
    }
    MESSAGE("quartic surrogate satisfied at " << sat << " samples, true floor held at " << held);
    CHECK(sat > 0);
}

TEST_CASE("linearized_modulus examples") {
    const cplx vh = std::polar(1.0, 0.7);
    CHECK(linearized_modulus(vh).value(scalar(vh)) + 1.0 == doctest::Approx(1.0).epsilon(1e-15));
    // v_hat = 1, v = i: 2 Re{i} - 1 = -1 < 1
    const AffineConstraint row = linearized_modulus(1.0);
    CHECK(row.value(scalar(cplx(0.0, 1.0))) + 1.0 == doctest::Approx(-1.0));
    CHECK(row.value(scalar(cplx(0.0, 1.0))) < 0.0);
    CHECK_THROWS_AS(linearized_modulus(0.0), std::invalid_argument);
    // A lower floor leaves room inside the unit circle.
    CHECK(linearized_modulus(1.0, 0.81).value(scalar(0.95)) > 0.0);
    CHECK(linearized_modulus(1.0).value(scalar(0.95)) < 0.0);
}

TEST_CASE("linearized_modulus implies the modulus floor") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> mag(0.2, 2.0);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    int hits = 0;
    for (int t = 0; t < 1000; ++t) {
        const cplx vh = std::polar(mag(rng), ang(rng));
        const cplx v = std::polar(mag(rng), ang(rng));
        for (double floor : {1.0, 0.81}) {
            if (linearized_modulus(vh, floor).value(scalar(v)) >= 0.0) {
                ++hits;
                CHECK(std::norm(v) >= floor * (1.0 - 1e-14));
            }
        }
    }
    CHECK(hits > 50);
}
