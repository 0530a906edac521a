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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "risisac/sca.hpp"
#include "risisac/types.hpp"

namespace risisac {

struct ModulusCap {
    int index = 0;
    double limit2 = 1.0;  // |x_index|^2 <= limit2
};

// maximize Re{b^H x} - x^H Q x  subject to affine >= 0, ||x||^2 <= ball, caps.
struct ConvexQPInstance {
    CMat Q;
    CVec b;
    std::vector<AffineConstraint> affine;
    std::optional<double> ball;
    std::vector<ModulusCap> caps;

    int dim() const { return static_cast<int>(b.size()); }
    double objective(const CVec& x) const;
    // Largest violation over all constraints in the instance's own units.
    // Affine rows count as violated below zero; ball and caps relative to
    // their limit.
    double max_violation(const CVec& x) const;
};

enum class SolveStatus { Optimal, Infeasible, MaxIter };

std::string to_string(SolveStatus s);

struct SolveOptions {
    double kkt_tol = 1e-8;
    double feas_tol = 1e-9;
    int max_iter = 200;  // Newton steps over both phases
    bool record_log = false;
    CVec x0;  // optional starting point; need not be feasible
};

struct IterateRecord {
    int stage = 0;  // 0 is phase 1, then one per centering pass
    int iteration = 0;
    double barrier = 0.0;  // t of the pass
    double merit = 0.0;
    double residual = 0.0;
};

struct SolveReport {
    CVec x;
    SolveStatus status = SolveStatus::MaxIter;
    double kkt_residual = 0.0;
    int iterations = 0;
    double objective = 0.0;
    double ridge = 0.0;         // regularization added to the Newton matrix, 0 if none
    bool used_fallback = false; // projected gradient took over from Newton
    std::vector<IterateRecord> log;
};

// Validates the instance (Hermitian PSD Q, positive limits) and throws
// std::invalid_argument when it is malformed.
void check_instance(const ConvexQPInstance& inst);

SolveReport solve(const ConvexQPInstance& inst, const SolveOptions& opts = {});

void write_iterate_log(const SolveReport& report, std::ostream& os);

}  // namespace risisac
