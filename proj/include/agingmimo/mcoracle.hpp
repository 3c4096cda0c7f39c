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
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "agingmimo/detse.hpp"

namespace agingmimo {

struct McConfig {
    int num_samples = 10000;
    std::uint64_t seed = 1;
    std::vector<int> nr_sweep;
    bool fast_path = false; // sample estimates from C_hat instead of simulating pilots
    int threads = 1;
};

struct McReport {
    std::vector<double> empirical_mean_se; // per user, averaged over data slots
    std::vector<double> deterministic_se;
    std::vector<double> relative_error;    // |emp - det| / max(det, 1e-12)
    double empirical_estimate_cov_error = 0.0; // worst relative Frobenius error of cov(z - mean) vs C_hat
    bool jensen_holds = true;                  // mean log(1+gamma) <= log(1 + mean gamma) for every user and slot
    int num_samples = 0;
    std::vector<std::pair<int, double>> nr_sweep; // (N_r, max relative error)

    double max_relative_error() const;
};

/// Generator keyed by (seed, user, draw, slot); draws with different keys are
/// independent of evaluation order.
std::mt19937_64 keyed_generator(std::uint64_t seed, std::uint64_t user, std::uint64_t draw, std::uint64_t slot);

/// i.i.d. CN(0, 1) entries.
CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

/// Draws jointly Gaussian channels h(t_1), ..., h(t_T) (columns, mean
/// included) from the stacked covariance with blocks C_h(t_a, t_b).
class JointChannelSampler {
public:
    JointChannelSampler(const ChannelStats& stats, std::span<const Time> times);
    CMatrix draw(std::mt19937_64& rng) const;
    const CMatrix& stacked_covariance() const { return cov_; }

private:
    CVector mean_;
    CMatrix cov_;
    CMatrix root_;
    Eigen::Index times_;
};

CMatrix sample_joint_channel(const ChannelStats& stats, std::span<const Time> times, std::uint64_t seed);

/// y_m = h_m + n_m with n white CN(0, beta) per component; h are centered
/// channels at the pilot slots (one column per pilot).
CMatrix synthesize_pilot_obs(const CMatrix& h_at_pilots, double beta, std::mt19937_64& rng);

/// z = mean + E (M + beta I)^{-1} y for stacked centered observations y.
CVector empirical_lmmse(const CVector& y_stacked, const CMatrix& e, const CMatrix& m, double beta,
                        const CVector& mean);

struct LmmseCheck {
    double estimate_cov_error = 0.0;  // ||cov(z - mean) - C_hat||_F / ||C_hat||_F
    double error_cov_error = 0.0;     // ||cov(h - z) - Q||_F / ||Q||_F
    double decomposition_error = 0.0; // ||cov(z - mean) + cov(h - z) - C_h||_F / ||C_h||_F
};

/// Simulates pilots and LMMSE estimation for one user at one data slot
/// (index into schedule.data_slots()) and compares sample covariances with
/// the closed forms.
LmmseCheck lmmse_empirical_check(const SystemConfig& cfg, int user, const FrameSchedule& schedule, int slot_index,
                                 int num_samples, std::uint64_t seed, int threads = 1);

/// Monte Carlo mean of log(1 + gamma) per user against the deterministic
/// equivalent, both averaged over the schedule's data slots.
McReport validate_deterministic(const SystemConfig& cfg, const FrameSchedule& schedule, const BeamformingMatrix& w,
                                const McConfig& mc);

} // namespace agingmimo
