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

#include <catch_amalgamated.hpp>

#include "agingmimo/frames.hpp"

using namespace agingmimo;

TEST_CASE("pilot and data slots follow the frame layout") {
    const FrameSchedule s = build_schedule({2, 3});
    CHECK(s.pilot_times() == std::vector<Time>{0, 3});
    REQUIRE(s.data_slot_count() == 5);
    CHECK(s.data_slots()[0].time == 1);
    CHECK(s.data_slots()[1].time == 2);
    CHECK(s.data_slots()[2].frame == 1);
    CHECK(s.data_slots()[2].time == 4);
    CHECK(s.data_slots()[4].time == 6);
    CHECK(s.total_slot_count() == 7);
}

TEST_CASE("single frame schedule") {
    const FrameSchedule s = build_schedule({5});
    CHECK(s.num_frames() == 1);
    CHECK(s.pilot_times() == std::vector<Time>{0});
    CHECK(s.data_slots().back().time == 5);
}

TEST_CASE("invalid schedules are rejected") {
    CHECK_THROWS_AS(build_schedule({}), EmptyScheduleError);
    CHECK_THROWS_AS(build_schedule({2, 0}), std::invalid_argument);
}

TEST_CASE("pilot window is centred and clipped at the edges") {
    const FrameSchedule s = build_schedule({1, 1, 1, 1});
    CHECK(pilot_window(s, 0) == std::vector<Time>{0, 2});
    CHECK(pilot_window(s, 1) == std::vector<Time>{0, 2, 4});
    CHECK(pilot_window(s, 3) == std::vector<Time>{4, 6});
    CHECK(pilot_window(s, 2, 1) == std::vector<Time>{4});
    CHECK(pilot_window(s, 1, 10).size() == 4);
    CHECK_THROWS_AS(pilot_window(s, 4), std::out_of_range);
}

TEST_CASE("schedules compare by frame sizes") {
    CHECK(build_schedule({1, 2}) == build_schedule({1, 2}));
    CHECK_FALSE(build_schedule({1, 2}) == build_schedule({2, 1}));
}
