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

#include "agingmimo/config.hpp"
#include "agingmimo/matops.hpp"

namespace agingmimo {

/// Clarke-Jakes temporal autocorrelation J0(2 pi f_d dt).
double temporal_correlation(double f_d, Time dt);

/// exp(-2 pi f_d |dt|).
double exponential_correlation(double f_d, Time dt);

double temporal_correlation(TemporalLaw law, double f_d, Time dt);

/// rho * 1 1^T + (1 - rho) * I of dimension n.
CMatrix build_spatial_correlation(double rho, Eigen::Index n);

/// Unit-modulus half-wavelength ULA steering vector.
CVector steering_vector(Eigen::Index n, double angle_deg);

/// LoS mean sqrt(sigma_h2 K/(K+1)) * vec(a_r a_t^H).
CVector rician_mean(const SystemConfig& cfg, const UserParams& user);

/// Per-user second-order statistics of h(t) = vec(H(t)). The cross-covariance
/// is separable: C_h(t1, t2) = rho(t1 - t2) * spatial_cov.
struct ChannelStats {
    CVector mean;
    CMatrix spatial_cov;
    double f_d = 0.0;
    TemporalLaw law = TemporalLaw::kExponential;

    Eigen::Index dim() const { return spatial_cov.rows(); }
    double temporal_corr(Time t1, Time t2) const { return temporal_correlation(law, f_d, t1 - t2); }
};

/// Spatial covariance sigma_h2/(K+1) * (R_T kron R_R), transmit factor on the
/// left to match vec(H) with H of size N_r x N_t.
ChannelStats build_channel_stats(const SystemConfig& cfg, const UserParams& user);

CMatrix cross_covariance(const ChannelStats& stats, Time t1, Time t2);

/// A(t1, t2) = C_h(t1, t2) C_h(t2)^{-1}.
CMatrix transition_matrix(const ChannelStats& stats, Time t1, Time t2);

} // namespace agingmimo
