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

#include "agingmimo/frames.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "agingmimo/errors.hpp"

namespace agingmimo {

FrameSchedule::FrameSchedule(std::vector<int> q) : q_(std::move(q)) {
    if (q_.empty())
        throw EmptyScheduleError("frame schedule needs at least one frame");
    Time t = 0;
    for (int m = 0; m < num_frames(); ++m) {
        if (q_[m] < 1)
            throw std::invalid_argument("frame " + std::to_string(m) + " has q = " + std::to_string(q_[m]) +
                                        "; every frame needs at least one data slot");
        pilot_times_.push_back(t);
        for (int j = 1; j <= q_[m]; ++j)
            data_slots_.push_back({m, t + j});
        t += q_[m] + 1;
    }
}

FrameSchedule build_schedule(const std::vector<int>& q) {
    return FrameSchedule(q);
}

std::vector<Time> pilot_window(const FrameSchedule& s, int m, int window) {
    if (m < 0 || m >= s.num_frames())
        throw std::out_of_range("pilot_window: frame " + std::to_string(m) + " outside schedule");
    if (window < 1)
        throw std::invalid_argument("pilot_window: window must be >= 1");
    const int radius = (window - 1) / 2;
    const int lo = std::max(0, m - radius);
    const int hi = std::min(s.num_frames() - 1, m + (window - 1 - radius));
    return {s.pilot_times().begin() + lo, s.pilot_times().begin() + hi + 1};
}

} // namespace agingmimo
