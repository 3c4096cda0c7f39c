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
#include <string>
#include <vector>

namespace agingmimo {

// Time is measured in slots (sampling time T = 1).
using Time = double;

enum class TemporalLaw {
    kExponential, // exp(-2 pi f_d |dt|)
    kJakes,       // J0(2 pi f_d dt)
};

enum class LogBase { kTwo, kE };

// How the sum spectral efficiency is averaged over a schedule.
enum class SseNormalization {
    kAllSlots,  // divide by sum(q_m + 1); pilot slots carry no payload
    kDataSlots, // divide by sum(q_m)
};

struct UserParams {
    double f_d = 0.1;       // normalized Doppler, cycles per slot
    double k_factor = 0.0;  // Rician K, linear
    double alpha = 1.0;     // path-loss amplitude; PL_dB = 20 log10(alpha)
    double p_pilot_max = 1.0;
    double p_data = 1.0;
    double sigma_p2 = 0.01; // pilot noise variance per element
    double sigma_h2 = 1.0;  // channel variance scale
    double aoa_deg = 0.0;
    double aod_deg = 0.0;
};

struct SystemConfig {
    int n_t = 2;
    int n_r = 10;
    int tau_p = 2;
    double sigma_d2 = 0.01;
    int q_max = 5;
    int m_max = 1;
    double rho_t = 0.9;
    double rho_r = 0.0;
    LogBase log_base = LogBase::kTwo;
    double f_c = 1000.0; // carried for provenance only
    TemporalLaw temporal_law = TemporalLaw::kExponential;
    int pilot_window = 3;
    SseNormalization normalization = SseNormalization::kAllSlots;
    std::vector<UserParams> users = std::vector<UserParams>(3);

    int num_users() const { return static_cast<int>(users.size()); }
    int channel_dim() const { return n_t * n_r; }
};

/// Parameters of the single-frame study with three identical users
/// (K = 3, N_r = 10, q_max = 5, M = 1, tau_p = 2, rho_T = 0.9, rho_R = 0,
/// sigma_d^2 = 0.01, unit pilot and data power, f_d = 0.1).
SystemConfig default_config();

/// Throws ConfigError naming the first invalid key.
void validate(const SystemConfig& cfg);

SystemConfig parse_config(const std::string& json_text);
SystemConfig load_config(const std::string& path);

/// Canonical JSON rendering used for hashing and provenance lines.
std::string to_json(const SystemConfig& cfg);

/// 64-bit FNV-1a over the canonical JSON rendering.
std::uint64_t config_hash(const SystemConfig& cfg);

double log_in_base(double x, LogBase base);

} // namespace agingmimo
