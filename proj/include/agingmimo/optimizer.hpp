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

#include <cstdint>
#include <optional>
#include <vector>

#include "agingmimo/detse.hpp"

namespace agingmimo {

struct BeamformingOptions {
    double gradient_step = 1e-5; // central-difference step
    double armijo = 1e-4;
    double min_improvement = 1e-8;
    int max_iterations = 200;
    std::uint64_t seed = 1; // seeds the random start
    FixedPointOptions fixed_point;
};

struct BeamformingResult {
    BeamformingMatrix w;
    double sse = 0.0;
    int iterations = 0;
    std::vector<double> history;      // accepted objective values of the winning start
    std::vector<double> start_values; // objective at each start: dominant eigvec, uniform, random
};

/// Projected-gradient ascent of the SSE over unit-norm beamformer columns,
/// with W shared by all slots. Starts from the dominant eigenvector of R_T,
/// the uniform vector and one seeded random point; returns the best.
BeamformingResult optimize_beamforming(const SystemConfig& cfg, const ScheduleStats& stats,
                                       const BeamformingOptions& opts = {});

BeamformingResult optimize_beamforming(const SystemConfig& cfg, const FrameSchedule& schedule,
                                       const BeamformingOptions& opts = {});

/// Dominant eigenvector of R_T repeated for every user, phase-fixed so the
/// first entry is real and non-negative.
BeamformingMatrix dominant_eigen_beamformers(const SystemConfig& cfg);

struct FrameCandidate {
    std::vector<int> q;
    double sse = 0.0;
    int fp_iterations = 0;
};

struct OptimizationResult {
    std::vector<int> best_q;
    int best_m = 0;
    BeamformingMatrix best_w;
    double best_sse = 0.0;
    int fp_iterations = 0; // worst-case fixed-point iterations at the optimum
    std::vector<FrameCandidate> trace; // enumeration order
};

struct FrameSearchOptions {
    bool equal_q_only = false; // restrict q to constant vectors (large M_max)
    int threads = 1;
    BeamformingOptions beamforming;
};

/// All schedules with 1 <= M <= m_max and 1 <= q_m <= q_max, ordered by M then
/// lexicographically.
std::vector<std::vector<int>> enumerate_schedules(int q_max, int m_max, bool equal_q_only);

/// Exhaustive search over (M, q) for a fixed W. Ties (within 1e-12 relative)
/// go to the shorter schedule, then to the lexicographically smaller q.
OptimizationResult optimize_frames(const SystemConfig& cfg, const BeamformingMatrix& w,
                                   const FrameSearchOptions& opts = {});

/// Exhaustive (M, q) search with beamformer ascent inside every candidate.
OptimizationResult joint_optimize(const SystemConfig& cfg, const FrameSearchOptions& opts = {});

} // namespace agingmimo
