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

#include <vector>

#include "agingmimo/config.hpp"
#include "agingmimo/errors.hpp"

namespace agingmimo {

struct DataSlot {
    int frame = 0; // zero-based frame index
    Time time = 0;
};

/// M frames, each one pilot slot followed by q_m data slots. Pilot m sits at
/// tau_m with tau_0 = 0 and tau_{m+1} = tau_m + q_m + 1.
class FrameSchedule {
public:
    explicit FrameSchedule(std::vector<int> q);

    const std::vector<int>& q() const { return q_; }
    int num_frames() const { return static_cast<int>(q_.size()); }
    const std::vector<Time>& pilot_times() const { return pilot_times_; }
    const std::vector<DataSlot>& data_slots() const { return data_slots_; }

    int data_slot_count() const { return static_cast<int>(data_slots_.size()); }
    /// Pilot plus data slots over all frames.
    int total_slot_count() const { return data_slot_count() + num_frames(); }

    bool operator==(const FrameSchedule& other) const { return q_ == other.q_; }

private:
    std::vector<int> q_;
    std::vector<Time> pilot_times_;
    std::vector<DataSlot> data_slots_;
};

/// Throws EmptyScheduleError when q is empty and std::invalid_argument when
/// any q_m < 1.
FrameSchedule build_schedule(const std::vector<int>& q);

/// Pilot times of frames m - w/2 .. m + w/2 (w = window, zero-based m),
/// clipped to the schedule. The default window of 3 gives previous, current
/// and next pilot.
std::vector<Time> pilot_window(const FrameSchedule& s, int m, int window = 3);

} // namespace agingmimo
