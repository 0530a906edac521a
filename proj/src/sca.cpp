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

#include "risisac/sca.hpp"

#include <stdexcept>

namespace risisac {

double quad_sensing_value(const CVec& u, const CVec& w) { return u.squaredNorm() * std::norm(u.dot(w)); }

AffineConstraint taylor_lb_quadratic(const CVec& u, const CVec& w_hat) {
    if (u.size() != w_hat.size()) throw std::invalid_argument("taylor_lb_quadratic: dimension mismatch");
    const double un = u.squaredNorm();
    const cplx proj = u.dot(w_hat);  // u^H w_hat
    AffineConstraint out;
    out.a = (2.0 * un * proj) * u;
    out.offset = -un * std::norm(proj);
    return out;
}

AffineConstraint linearized_sensing_w(const CVec& u, const BeamformerState& expansion, double gamma_linear,
                                      double sigma_t2) {
    if (!(gamma_linear >= 0.0)) throw std::invalid_argument("linearized_sensing_w: negative threshold");
    const auto M = u.size();
    const int K = expansion.users();
    AffineConstraint out;
    out.a.resize(M * (K + 1));
    out.offset = -gamma_linear * sigma_t2;
    for (int j = 0; j <= K; ++j) {
        const CVec& w = j < K ? expansion.W[static_cast<std::size_t>(j)] : expansion.w_s;
        const auto piece = taylor_lb_quadratic(u, w);
        out.a.segment(j * M, M) = piece.a;
        out.offset += piece.offset;
    }
    return out;
}

double quartic_sensing_value(const CVec& v_ext, const CMat& A, const CMat& B) {
    return std::real(v_ext.dot(A * v_ext)) * std::real(v_ext.dot(B * v_ext));
}

AffineConstraint taylor_surrogate_quartic(const CVec& v_bar, const CMat& A, const CMat& B) {
    const CVec Av = A * v_bar;
    const CVec Bv = B * v_bar;
    const double fa = std::real(v_bar.dot(Av));
    const double fb = std::real(v_bar.dot(Bv));
    AffineConstraint out;
    out.a = 2.0 * fb * Av + 2.0 * fa * Bv;
    out.offset = -3.0 * fa * fb;
    return out;
}

AffineConstraint taylor_surrogate_quartic(const CVec& v_bar, const CMat& Gt, const CVec& w) {
    const CVec u = Gt * v_bar;
    const cplx wu = w.dot(u);  // w^H u
    const CVec Av = Gt.adjoint() * u;
    const CVec Bv = Gt.adjoint() * w * wu;
    const double fa = u.squaredNorm();
    const double fb = std::norm(wu);
    AffineConstraint out;
    out.a = 2.0 * fb * Av + 2.0 * fa * Bv;
    out.offset = -3.0 * fa * fb;
    return out;
}

AffineConstraint linearized_sensing_v(const BeamformerState& beams, const CVec& v_hat, const CMat& Gt,
                                      double gamma_linear, double sigma_t2) {
    if (Gt.cols() != v_hat.size() + 1) throw std::invalid_argument("linearized_sensing_v: dimension mismatch");
    const CVec v_bar = extend_phases(v_hat);
    const CVec u = Gt * v_bar;
    const CVec Av = Gt.adjoint() * u;
    const double fa = u.squaredNorm();
    AffineConstraint out;
    out.a = CVec::Zero(v_bar.size());
    out.offset = -gamma_linear * sigma_t2;
    const int K = beams.users();
    for (int j = 0; j <= K; ++j) {
        const CVec& w = j < K ? beams.W[static_cast<std::size_t>(j)] : beams.w_s;
        const cplx wu = w.dot(u);
        const double fb = std::norm(wu);
        out.a += 2.0 * fb * Av + 2.0 * fa * (Gt.adjoint() * w) * wu;
        out.offset -= 3.0 * fa * fb;
    }
    return out;
}

AffineConstraint linearized_modulus(cplx v_hat, double floor) {
    if (v_hat == cplx(0.0)) throw std::invalid_argument("linearized_modulus: zero expansion point");
    AffineConstraint out;
    out.a = CVec::Constant(1, 2.0 * v_hat);
    out.offset = -std::norm(v_hat) - floor;
    return out;
}

}  // namespace risisac
