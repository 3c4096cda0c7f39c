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

#include <cmath>

#include <catch_amalgamated.hpp>

#include "agingmimo/detse.hpp"
#include "support.hpp"

using namespace agingmimo;
using Catch::Approx;

namespace {

struct ScalarPair {
    std::vector<SlotStats> stats{2};
    BeamformingMatrix w = BeamformingMatrix::uniform(1, 2);
    std::vector<double> alphas{1.0, 1.0};
    std::vector<double> powers{1.0, 1.0};

    ScalarPair() {
        for (SlotStats& s : stats) {
            s.r_z = CMatrix::Identity(1, 1);
            s.c_hat = CMatrix::Identity(1, 1);
            s.q = CMatrix::Zero(1, 1);
        }
    }
    DetSlotInputs inputs(double sigma) const { return {stats, &w, alphas, powers, sigma}; }
};

} // namespace

TEST_CASE("two symmetric scalar users converge to the golden ratio") {
    const ScalarPair p;
    const InterferenceSolution sol = deterministic_interference(p.inputs(1.0));
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    for (double w : sol.fixed_point.omega)
        CHECK(w == Approx(golden).margin(1e-6));
    CHECK(sol.fixed_point.residual <= 1e-9);
    CHECK(sol.fixed_point.iterations <= 1000);

    const DetSlotSE se = deterministic_se(p.inputs(1.0));
    CHECK(se.per_user_se[0] == Approx(std::log2(1.0 + golden)).margin(1e-6));
}

TEST_CASE("fixed point solution is a fixed point of the map") {
    SystemConfig cfg = default_config();
    cfg.n_r = 4;
    cfg.users[0].alpha = 0.4;
    cfg.users[2].k_factor = 3.0;
    const ScheduleStats st = build_schedule_stats(cfg, build_schedule({3}));
    const BeamformingMatrix w = BeamformingMatrix::normalized(agingmimo::testing::random_complex(2, 3, 5));
    const std::vector<double> alphas = user_alphas(cfg), powers = user_data_powers(cfg);
    for (const auto& slot : st.slots) {
        const DetSlotInputs in{slot, &w, alphas, powers, cfg.sigma_d2};
        const InterferenceSolution sol = deterministic_interference(in);
        const std::vector<double> image = fixed_point_map(in, sol.fixed_point.omega);
        for (std::size_t j = 0; j < image.size(); ++j)
            CHECK(image[j] == Approx(sol.fixed_point.omega[j]).epsilon(1e-8));
    }
}

TEST_CASE("deterministic SINR equals alpha^2 p omega") {
    SystemConfig cfg = default_config();
    cfg.n_r = 3;
    cfg.users[1].alpha = 0.6;
    cfg.users[1].p_data = 0.5;
    const ScheduleStats st = build_schedule_stats(cfg, build_schedule({2}));
    const BeamformingMatrix w = BeamformingMatrix::uniform(2, 3);
    const std::vector<double> alphas = user_alphas(cfg), powers = user_data_powers(cfg);
    const DetSlotInputs in{st.slots[1], &w, alphas, powers, cfg.sigma_d2};
    const DetSlotSE se = deterministic_se(in);
    // The brackets are taken at the final iterate, so the SINR is alpha^2 times
    // one more map application, and alpha^2 omega up to the solver tolerance.
    const std::vector<double> image = fixed_point_map(in, se.interference.fixed_point.omega);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(se.per_user_sinr[k] == Approx(alphas[k] * alphas[k] * image[k]).epsilon(1e-12));
        CHECK(se.per_user_sinr[k] ==
              Approx(alphas[k] * alphas[k] * se.interference.fixed_point.omega[k]).epsilon(1e-8));
    }
}

TEST_CASE("single user reduces to a trace against the noise-plus-error bracket") {
    SlotStats s;
    s.r_z = agingmimo::testing::random_psd(4, 3);
    s.q = agingmimo::testing::random_psd(4, 4) * 0.1;
    const std::vector<SlotStats> stats{s};
    const BeamformingMatrix w = BeamformingMatrix::uniform(2, 1);
    const std::vector<double> alphas{0.8}, powers{1.0};
    const DetSlotInputs in{stats, &w, alphas, powers, 0.05};
    const CMatrix b = 0.64 * a_operator(s.q, w.column(0), 1.0) + 0.05 * CMatrix::Identity(2, 2);
    const double expected = (b.inverse() * a_operator(s.r_z, w.column(0), 1.0)).trace().real();
    const InterferenceSolution sol = deterministic_interference(in);
    CHECK(sol.fixed_point.omega[0] == Approx(expected).epsilon(1e-8));
    CHECK(fixed_point_map(in, sol.fixed_point.omega)[0] == Approx(expected).epsilon(1e-12));
}

TEST_CASE("deterministic SE is invariant to beamformer phase") {
    const SystemConfig cfg = default_config();
    const ScheduleStats st = build_schedule_stats(cfg, build_schedule({3}));
    const CMatrix raw = agingmimo::testing::random_complex(2, 3, 17);
    const BeamformingMatrix w = BeamformingMatrix::normalized(raw);
    CMatrix rotated = w.matrix();
    rotated.col(0) *= std::polar(1.0, 0.9);
    rotated.col(2) *= std::polar(1.0, -2.2);
    const double a = sse_objective(cfg, st, w).sse;
    const double b = sse_objective(cfg, st, BeamformingMatrix(rotated)).sse;
    CHECK(b == Approx(a).epsilon(1e-12));
}

TEST_CASE("both starts reach the same fixed point") {
    const SystemConfig cfg = default_config();
    const ScheduleStats st = build_schedule_stats(cfg, build_schedule({4}));
    const BeamformingMatrix w = BeamformingMatrix::uniform(2, 3);
    const std::vector<double> alphas = user_alphas(cfg), powers = user_data_powers(cfg);
    FixedPointOptions opts;
    opts.check_alternate_start = true;
    for (const auto& slot : st.slots)
        CHECK_FALSE(deterministic_interference({slot, &w, alphas, powers, cfg.sigma_d2}, opts)
                        .fixed_point.alternate_start_disagrees);
}

TEST_CASE("iteration cap raises a convergence error with the last residual") {
    const ScalarPair p;
    FixedPointOptions opts;
    opts.max_iterations = 3;
    try {
        deterministic_interference(p.inputs(1.0), opts);
        FAIL("expected NoConvergenceError");
    } catch (const NoConvergenceError& e) {
        CHECK(e.last_residual() > opts.tolerance);
    }
}

TEST_CASE("zero data power yields zero SE") {
    SystemConfig cfg = default_config();
    cfg.users[1].p_data = 0.0;
    const ScheduleStats st = build_schedule_stats(cfg, build_schedule({2}));
    const BeamformingMatrix w = BeamformingMatrix::uniform(2, 3);
    const std::vector<double> alphas = user_alphas(cfg), powers = user_data_powers(cfg);
    const DetSlotSE se = deterministic_se({st.slots[0], &w, alphas, powers, cfg.sigma_d2});
    CHECK(se.per_user_se[1] == 0.0);
    CHECK(se.per_user_se[0] > 0.0);
}

TEST_CASE("SSE normalization divides by all slots or data slots") {
    SystemConfig cfg = default_config();
    const FrameSchedule s = build_schedule({2, 3});
    const BeamformingMatrix w = BeamformingMatrix::uniform(2, 3);
    const double all = sse_objective(cfg, s, w).sse;
    cfg.normalization = SseNormalization::kDataSlots;
    const double data = sse_objective(cfg, s, w).sse;
    CHECK(all * 7.0 == Approx(data * 5.0).epsilon(1e-12));
}

TEST_CASE("SSE in nats is ln 2 times SSE in bits") {
    SystemConfig cfg = default_config();
    const FrameSchedule s = build_schedule({3});
    const BeamformingMatrix w = BeamformingMatrix::uniform(2, 3);
    const double bits = sse_objective(cfg, s, w).sse;
    cfg.log_base = LogBase::kE;
    CHECK(sse_objective(cfg, s, w).sse == Approx(bits * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("mismatched per-user inputs are rejected") {
    const ScalarPair p;
    const std::vector<double> one{1.0};
    const DetSlotInputs bad{p.stats, &p.w, one, p.powers, 1.0};
    CHECK_THROWS_AS(deterministic_interference(bad), DimensionMismatchError);
}
