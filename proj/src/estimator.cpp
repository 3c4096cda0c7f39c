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

#include "agingmimo/estimator.hpp"

#include <stdexcept>

namespace agingmimo {

double effective_pilot_noise(const UserParams& user, int tau_p, int num_frames) {
    const double p_pilot = user.p_pilot_max / static_cast<double>(num_frames);
    return user.sigma_p2 / (static_cast<double>(tau_p) * user.alpha * user.alpha * p_pilot);
}

CMatrix assemble_E(const ChannelStats& stats, std::span<const Time> pilots, Time i) {
    if (pilots.empty())
        throw std::invalid_argument("assemble_E: no pilots");
    const Eigen::Index n = stats.dim();
    CMatrix e(n, n * static_cast<Eigen::Index>(pilots.size()));
    for (std::size_t p = 0; p < pilots.size(); ++p)
        e.middleCols(static_cast<Eigen::Index>(p) * n, n) = cross_covariance(stats, i, pilots[p]);
    return e;
}

CMatrix assemble_M(const ChannelStats& stats, std::span<const Time> pilots) {
    if (pilots.empty())
        throw std::invalid_argument("assemble_M: no pilots");
    const Eigen::Index n = stats.dim();
    const auto count = static_cast<Eigen::Index>(pilots.size());
    CMatrix m(n * count, n * count);
    for (Eigen::Index a = 0; a < count; ++a)
        for (Eigen::Index b = 0; b < count; ++b)
            m.block(a * n, b * n, n, n) = cross_covariance(stats, pilots[a], pilots[b]);
    // Indefinite beyond rounding -> NotPsdError.
    static_cast<void>(clamp_psd(m));
    return m;
}

CMatrix lmmse_gain(const CMatrix& e, const CMatrix& m, double beta) {
    if (e.cols() != m.rows())
        throw DimensionMismatchError("lmmse_gain: E and M disagree in dimension");
    if (!(beta > 0.0))
        throw std::invalid_argument("lmmse_gain: beta must be positive");
    // (M + beta I) X = E^H, gain = X^H.
    return herm_solve(m, e.adjoint(), beta).adjoint();
}

CMatrix lmmse_covariance(const CMatrix& e, const CMatrix& m, double beta) {
    return clamp_psd(lmmse_gain(e, m, beta) * e.adjoint());
}

SlotStats slot_stats(const SystemConfig& cfg, int user, const ChannelStats& stats, const FrameSchedule& schedule,
                     int m, Time i) {
    const std::vector<Time> pilots = pilot_window(schedule, m, cfg.pilot_window);
    const double beta = effective_pilot_noise(cfg.users.at(user), cfg.tau_p, schedule.num_frames());
    SlotStats s;
    s.user = user;
    s.slot_time = i;
    s.c_hat = lmmse_covariance(assemble_E(stats, pilots, i), assemble_M(stats, pilots), beta);
    s.q = stats.spatial_cov - s.c_hat;
    s.r_z = s.c_hat + stats.mean * stats.mean.adjoint();
    return s;
}

ScheduleStats build_schedule_stats(const SystemConfig& cfg, const FrameSchedule& schedule) {
    ScheduleStats out{schedule, {}, {}};
    for (const UserParams& u : cfg.users)
        out.channels.push_back(build_channel_stats(cfg, u));
    for (const DataSlot& slot : schedule.data_slots()) {
        std::vector<SlotStats> per_user;
        per_user.reserve(cfg.users.size());
        for (int k = 0; k < cfg.num_users(); ++k)
            per_user.push_back(slot_stats(cfg, k, out.channels[k], schedule, slot.frame, slot.time));
        out.slots.push_back(std::move(per_user));
    }
    return out;
}

} // namespace agingmimo
