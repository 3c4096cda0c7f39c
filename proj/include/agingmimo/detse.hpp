// SPDX-License-Identifier: Apache-2.0
//
// agingmimo: spectral efficiency and pilot spacing for aging MIMO uplinks
// Copyright (C) 2026 The agingmimo authors
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

#include <span>
#include <vector>

#include "agingmimo/estimator.hpp"
#include "agingmimo/linkmath.hpp"

namespace agingmimo {

struct FixedPointOptions {
    double damping = 0.5;
    double tolerance = 1e-9;
    int max_iterations = 1000;
    // Re-solve from omega = 1 and flag a mismatch (diagnostic only).
    bool check_alternate_start = false;
};

struct FixedPointSolution {
    std::vector<double> omega;
    double residual = 0.0; // max_j |omega_j - RHS_j| / max(1, |RHS_j|)
    int iterations = 0;
    bool alternate_start_disagrees = false;
};

/// Per-user inputs shared by the deterministic-equivalent routines. All
/// spans are indexed by user.
struct DetSlotInputs {
    std::span<const SlotStats> stats;
    const BeamformingMatrix* w = nullptr;
    std::span<const double> alphas;
    std::span<const double> p_data;
    double sigma_d2 = 0.0;
};

struct InterferenceSolution {
    FixedPointSolution fixed_point;
    // B_k = sum_{l != k} alpha_l^2 A_l(R_zl) / (1 + alpha_l^2 omega_l) + S + sigma_d2 I
    std::vector<CMatrix> brackets;
    CMatrix s; // sum_k alpha_k^2 A_k(Q_k)
};

/// Solves omega_j = <A_j(R_zj), B_j^{-1}> for all users by damped fixed-point
/// iteration from omega = 0. Throws NoConvergenceError if the residual is
/// still above tolerance after max_iterations.
InterferenceSolution deterministic_interference(const DetSlotInputs& in, const FixedPointOptions& opts = {});

/// The fixed-point map itself, exposed for residual checks.
std::vector<double> fixed_point_map(const DetSlotInputs& in, std::span<const double> omega);

struct DetSlotSE {
    Time slot_time = 0;
    std::vector<double> per_user_sinr;
    std::vector<double> per_user_se;
    InterferenceSolution interference;
};

/// SE°_k = log(1 + alpha_k^2 P_k <R_zk, conj(w_k) w_k^T kron B_k^{-1}>).
DetSlotSE deterministic_se(const DetSlotInputs& in, LogBase base = LogBase::kTwo, const FixedPointOptions& opts = {});

struct SseValue {
    double sse = 0.0;
    int max_iterations = 0;
    double max_residual = 0.0;
};

/// Sum over users of SE°, summed over data slots and divided by the slot
/// count chosen by cfg.normalization.
SseValue sse_objective(const SystemConfig& cfg, const ScheduleStats& stats, const BeamformingMatrix& w,
                       const FixedPointOptions& opts = {});

SseValue sse_objective(const SystemConfig& cfg, const FrameSchedule& schedule, const BeamformingMatrix& w,
                       const FixedPointOptions& opts = {});

std::vector<double> user_alphas(const SystemConfig& cfg);
std::vector<double> user_data_powers(const SystemConfig& cfg);

} // namespace agingmimo
