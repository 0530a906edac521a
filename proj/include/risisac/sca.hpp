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

#include "risisac/metrics.hpp"
#include "risisac/types.hpp"

namespace risisac {

// Re{a^H x} + offset >= 0
struct AffineConstraint {
    CVec a;
    double offset = 0.0;

    double value(const CVec& x) const { return std::real(a.dot(x)) + offset; }
};

// ||u||^2 |u^H w|^2, i.e. ||G_t^H w||^2 with G_t = u u^H.
double quad_sensing_value(const CVec& u, const CVec& w);

// Tangent plane of the sensing quadratic at w_hat: a = 2 Q w_hat, offset = -w_hat^H Q w_hat,
// Q = ||u||^2 u u^H. Q is PSD, so this minorizes the quadratic everywhere.
AffineConstraint taylor_lb_quadratic(const CVec& u, const CVec& w_hat);

// Sum of tangent planes over the stacked variable [w_1; ...; w_K; w_s], minus
// Gamma * sigma_t^2.
AffineConstraint linearized_sensing_w(const CVec& u, const BeamformerState& expansion, double gamma_linear,
                                      double sigma_t2);

// (v~^H A v~)(v~^H B v~)
double quartic_sensing_value(const CVec& v_ext, const CMat& A, const CMat& B);

// First-order expansion of the quartic at v_bar:
//   a = 2 (v_bar^H B v_bar) A v_bar + 2 (v_bar^H A v_bar) B v_bar,  offset = -3 ab.
AffineConstraint taylor_surrogate_quartic(const CVec& v_bar, const CMat& A, const CMat& B);

// Same expansion with A = Gt^H Gt and B = Gt^H w w^H Gt applied implicitly.
AffineConstraint taylor_surrogate_quartic(const CVec& v_bar, const CMat& Gt, const CVec& w);

// Sum of quartic surrogates over all K+1 beams, minus Gamma * sigma_t^2. The
// variable is v~ = [v; 1] of length N+1.
AffineConstraint linearized_sensing_v(const BeamformerState& beams, const CVec& v_hat, const CMat& Gt,
                                      double gamma_linear, double sigma_t2);

// 2 Re{conj(v_hat) v} - |v_hat|^2 >= floor. floor = 1 gives the unit-modulus
// minorant; a smaller floor leaves an annulus of width to move in.
AffineConstraint linearized_modulus(cplx v_hat, double floor = 1.0);

}  // namespace risisac
