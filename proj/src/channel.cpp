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

#include "agingmimo/channel.hpp"

#include <cmath>
#include <numbers>

namespace agingmimo {

double temporal_correlation(double f_d, Time dt) {
    return std::cyl_bessel_j(0.0, 2.0 * std::numbers::pi * f_d * std::abs(dt));
}

double exponential_correlation(double f_d, Time dt) {
    return std::exp(-2.0 * std::numbers::pi * f_d * std::abs(dt));
}

double temporal_correlation(TemporalLaw law, double f_d, Time dt) {
    if (dt == 0.0)
        return 1.0;
    switch (law) {
    case TemporalLaw::kJakes:
        return temporal_correlation(f_d, dt);
    case TemporalLaw::kExponential:
        return exponential_correlation(f_d, dt);
    }
    return 1.0;
}

CMatrix build_spatial_correlation(double rho, Eigen::Index n) {
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("build_spatial_correlation: rho must lie in [0, 1]");
    CMatrix r = CMatrix::Constant(n, n, rho);
    r.diagonal().array() = 1.0;
    return r;
}

CVector steering_vector(Eigen::Index n, double angle_deg) {
    const double phase = std::numbers::pi * std::sin(angle_deg * std::numbers::pi / 180.0);
    CVector a(n);
    for (Eigen::Index i = 0; i < n; ++i)
        a(i) = std::polar(1.0, phase * static_cast<double>(i));
    return a;
}

CVector rician_mean(const SystemConfig& cfg, const UserParams& user) {
    const double scale = std::sqrt(user.sigma_h2 * user.k_factor / (user.k_factor + 1.0));
    const CVector a_r = steering_vector(cfg.n_r, user.aoa_deg);
    const CVector a_t = steering_vector(cfg.n_t, user.aod_deg);
    return scale * vec(a_r * a_t.adjoint());
}

ChannelStats build_channel_stats(const SystemConfig& cfg, const UserParams& user) {
    ChannelStats s;
    s.mean = rician_mean(cfg, user);
    const double nlos = user.sigma_h2 / (user.k_factor + 1.0);
    s.spatial_cov = nlos * kron(build_spatial_correlation(cfg.rho_t, cfg.n_t),
                                build_spatial_correlation(cfg.rho_r, cfg.n_r));
    s.f_d = user.f_d;
    s.law = cfg.temporal_law;
    return s;
}

CMatrix cross_covariance(const ChannelStats& stats, Time t1, Time t2) {
    if (t1 == t2)
        return stats.spatial_cov;
    return stats.temporal_corr(t1, t2) * stats.spatial_cov;
}

CMatrix transition_matrix(const ChannelStats& stats, Time t1, Time t2) {
    // A C = C(t1,t2)  <=>  C A^H = C(t1,t2)^H for Hermitian C.
    const CMatrix c12 = cross_covariance(stats, t1, t2);
    return herm_solve(stats.spatial_cov, c12.adjoint()).adjoint();
}

} // namespace agingmimo
