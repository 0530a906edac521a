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
#include "risisac/fp.hpp"

using namespace risisac;

namespace {

struct Draw {
    std::vector<CVec> H;
    BeamformerState s;
    double sigma2 = 0.0;
};

Draw random_draw(std::mt19937_64& rng, int M = 4, int K = 3) {
    std::uniform_real_distribution<double> noise(0.05, 2.0);
    Draw d;
    for (int k = 0; k < K; ++k) d.H.push_back(oracle::random_cvec(rng, M));
    for (int k = 0; k < K; ++k) d.s.W.push_back(oracle::random_cvec(rng, M, 0.7));
    d.s.w_s = oracle::random_cvec(rng, M, 0.3);
    d.sigma2 = noise(rng);
    return d;
}

CVec scalar(cplx x) {
    CVec v(1);
    v << x;
    return v;
}

// Total received power at user k including its own beam, from explicit loops.
double denominator(const Draw& d, std::size_t k) {
    double acc = d.sigma2 + std::norm(oracle::inner(d.H[k], d.s.w_s));
    for (const auto& w : d.s.W) acc += std::norm(oracle::inner(d.H[k], w));
    return acc;
}

}  // namespace

TEST_CASE("update_r equals the per-user SINR") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        const Draw d = random_draw(rng);
        const RVec r = update_r(d.H, d.s, d.sigma2);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(r(k) - sinr(d.H, d.s, k, d.sigma2)) <= 1e-15 * (1.0 + r(k)));
    }
}

TEST_CASE("update_r scalar and zero-beam cases") {
    Draw d;
    d.H = {scalar(cplx(1.0, 1.0))};
    d.s.W = {scalar(2.0)};
    d.s.w_s = scalar(0.0);
    d.sigma2 = 1.0;
    CHECK(update_r(d.H, d.s, 1.0)(0) == doctest::Approx(8.0).epsilon(1e-15));
    d.s.W[0] = scalar(0.0);
    CHECK(update_r(d.H, d.s, 1.0)(0) == 0.0);
}

TEST_CASE("dual_objective examples") {
    std::mt19937_64 rng(2);
    Draw d = random_draw(rng);
    for (auto& w : d.s.W) w.setZero();
    d.s.w_s.setZero();
    RVec r(3);
    r << 0.0, 0.5, 3.0;
    const double expect = std::log2(1.5) - 0.5 + std::log2(4.0) - 3.0;
    CHECK(dual_objective(d.H, d.s, r, d.sigma2) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(dual_objective(d.H, d.s, RVec::Zero(3), d.sigma2) == 0.0);
    CHECK(dual_offset(r) == doctest::Approx(expect).epsilon(1e-14));
    RVec bad = r;
    bad(1) = -0.1;
    CHECK_THROWS_AS(dual_objective(d.H, d.s, bad, d.sigma2), std::invalid_argument);

    // Single user: r = 8 and the ratio term is 8/9.
    Draw one;
    one.H = {scalar(cplx(1.0, 1.0))};
    one.s.W = {scalar(2.0)};
    one.s.w_s = scalar(0.0);
    RVec r8(1);
    r8 << 8.0;
    CHECK(dual_objective(one.H, one.s, r8, 1.0) == doctest::Approx(std::log2(9.0) - 8.0 + 9.0 * 8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("dual objective at the optimal r equals the sum-rate") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        const Draw d = random_draw(rng);
        const RVec r = update_r(d.H, d.s, d.sigma2);
        CHECK(std::abs(dual_objective(d.H, d.s, r, d.sigma2) - sum_rate(d.H, d.s, d.sigma2)) <= 1e-9);
    }
}

TEST_CASE("update_c examples") {
    std::mt19937_64 rng(4);
    Draw d = random_draw(rng);
    for (auto& w : d.s.W) w.setZero();
    d.s.w_s.setZero();
    CHECK(update_c(d.H, d.s, RVec::Constant(3, 0.7), d.sigma2).cwiseAbs().maxCoeff() == 0.0);

    // M = K = 1: c = sqrt(1+r) h^H w / (|h^H w|^2 + sigma^2) = 3 (2 - 2i) / 9
    Draw one;
    one.H = {scalar(cplx(1.0, 1.0))};
    one.s.W = {scalar(2.0)};
    one.s.w_s = scalar(0.0);
    RVec r8(1);
    r8 << 8.0;
    const CVec c = update_c(one.H, one.s, r8, 1.0);
    CHECK(std::abs(c(0) - cplx(2.0, -2.0) / 3.0) <= 1e-15);
}

TEST_CASE("quad_objective examples") {
    std::mt19937_64 rng(5);
    const Draw d = random_draw(rng);
    const RVec r = update_r(d.H, d.s, d.sigma2);
    CHECK(quad_objective(d.H, d.s, r, CVec::Zero(3), d.sigma2) == 0.0);

    Draw one;
    one.H = {scalar(cplx(1.0, 1.0))};
    one.s.W = {scalar(2.0)};
    one.s.w_s = scalar(0.0);
    RVec r8(1);
    r8 << 8.0;
    // c = 1: 2*3*Re{2 - 2i} - (8 + 1) = 3
    CHECK(quad_objective(one.H, one.s, r8, CVec::Ones(1), 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    // At the optimal c the value equals r * ... = (1+r)|h^H w|^2/(P+sigma^2) = 9 * 8/9 = 8.
    CHECK(quad_objective(one.H, one.s, r8, update_c(one.H, one.s, r8, 1.0), 1.0) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("update_c matches the explicit formula") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 50; ++t) {
        const Draw d = random_draw(rng);
        const RVec r = update_r(d.H, d.s, d.sigma2);
        const CVec c = update_c(d.H, d.s, r, d.sigma2);
        for (std::size_t k = 0; k < 3; ++k) {
            const cplx expect = std::sqrt(1.0 + r(static_cast<Eigen::Index>(k))) * oracle::inner(d.H[k], d.s.W[k]) / denominator(d, k);
            CHECK(std::abs(c(static_cast<Eigen::Index>(k)) - expect) <= 1e-13 * (1.0 + std::abs(expect)));
        }
    }
}

TEST_CASE("quadratic-transform tangency") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.0, 5.0);
    for (int t = 0; t < 100; ++t) {
        const Draw d = random_draw(rng);
        RVec r(3);
        for (int k = 0; k < 3; ++k) r(k) = ur(rng);
        const CVec c = update_c(d.H, d.s, r, d.sigma2);
        const double q = quad_objective(d.H, d.s, r, c, d.sigma2);
        CHECK(std::abs(q + dual_offset(r) - dual_objective(d.H, d.s, r, d.sigma2)) <= 1e-9);
        // ratio-sum form
        double ratio = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
            ratio += (1.0 + r(static_cast<Eigen::Index>(k))) * std::norm(oracle::inner(d.H[k], d.s.W[k])) / denominator(d, k);
        CHECK(std::abs(q - ratio) <= 1e-9);
    }
}

TEST_CASE("update_c maximizes quad_objective over c") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> mag(1e-4, 1.0);
    Draw d = random_draw(rng);
    const RVec r = update_r(d.H, d.s, d.sigma2);
    const CVec c = update_c(d.H, d.s, r, d.sigma2);
    const double best = quad_objective(d.H, d.s, r, c, d.sigma2);
    for (int t = 0; t < 1000; ++t) {
        CVec p = c;
        const double m = mag(rng);
        for (Eigen::Index k = 0; k < p.size(); ++k) p(k) += m * cplx(g(rng), g(rng));
        CHECK(quad_objective(d.H, d.s, r, p, d.sigma2) <= best + 1e-12);
    }
}

TEST_CASE("quad_objective is concave in the beams") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    const Draw base = random_draw(rng);
    const RVec r = update_r(base.H, base.s, base.sigma2);
    const CVec c = update_c(base.H, base.s, r, base.sigma2);
    for (int t = 0; t < 1000; ++t) {
        const Draw a = random_draw(rng);
        const Draw b = random_draw(rng);
        const double l = lam(rng);
        BeamformerState mid = a.s;
        for (std::size_t k = 0; k < 3; ++k) mid.W[k] = l * a.s.W[k] + (1 - l) * b.s.W[k];
        mid.w_s = l * a.s.w_s + (1 - l) * b.s.w_s;
        const double fa = quad_objective(base.H, a.s, r, c, base.sigma2);
        const double fb = quad_objective(base.H, b.s, r, c, base.sigma2);
        const double fm = quad_objective(base.H, mid, r, c, base.sigma2);
        CHECK(fm >= l * fa + (1 - l) * fb - 1e-12 * (1.0 + std::abs(fa) + std::abs(fb)));
    }
}

TEST_CASE("fp rejects mismatched sizes") {
    std::mt19937_64 rng(10);
    const Draw d = random_draw(rng);
    CHECK_THROWS_AS(update_c(d.H, d.s, RVec::Zero(2), d.sigma2), std::invalid_argument);
    CHECK_THROWS_AS(quad_objective(d.H, d.s, RVec::Zero(3), CVec::Zero(2), d.sigma2), std::invalid_argument);
}
