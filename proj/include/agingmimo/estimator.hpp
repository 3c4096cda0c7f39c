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

#include "agingmimo/channel.hpp"
#include "agingmimo/frames.hpp"

namespace agingmimo {

/// LMMSE estimate statistics of one user at one data slot.
struct SlotStats {
    int user = 0;
    Time slot_time = 0;
    CMatrix c_hat; // estimate covariance
    CMatrix q;     // error covariance C_h - C_hat
    CMatrix r_z;   // estimate autocorrelation C_hat + mean mean^H
};

/// Effective per-component pilot noise sigma_p2 / (tau_p alpha^2 P_p) with
/// P_p = P_p_max / M.
double effective_pilot_noise(const UserParams& user, int tau_p, int num_frames);

/// N x (P N) block row; block p is C_h(i, pilot_p).
CMatrix assemble_E(const ChannelStats& stats, std::span<const Time> pilots, Time i);

/// (P N) x (P N) Gram matrix with block (a, b) = C_h(pilot_a, pilot_b).
CMatrix assemble_M(const ChannelStats& stats, std::span<const Time> pilots);

/// E (M + beta I)^{-1} E^H, symmetrized and PSD-clamped.
CMatrix lmmse_covariance(const CMatrix& e, const CMatrix& m, double beta);

/// Linear map E (M + beta I)^{-1} from centered stacked pilot observations to
/// the centered channel estimate.
CMatrix lmmse_gain(const CMatrix& e, const CMatrix& m, double beta);

/// Statistics for `user` at data slot time i of frame m (zero-based).
SlotStats slot_stats(const SystemConfig& cfg, int user, const ChannelStats& stats, const FrameSchedule& schedule,
                     int m, Time i);

/// Everything the data-phase math needs for one schedule: per data slot, per
/// user statistics. Depends on the schedule, not on the beamformers.
struct ScheduleStats {
    FrameSchedule schedule;
    std::vector<ChannelStats> channels;         // [user]
    std::vector<std::vector<SlotStats>> slots; // [data slot][user]
};

ScheduleStats build_schedule_stats(const SystemConfig& cfg, const FrameSchedule& schedule);

} // namespace agingmimo
