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

#include "agingmimo/config.hpp"
#include "agingmimo/estimator.hpp"
#include "agingmimo/matops.hpp"

namespace agingmimo {

/// N_t x K matrix of unit-norm transmit beamformers, one column per user.
class BeamformingMatrix {
public:
    /// Throws std::invalid_argument unless every column has unit norm within 1e-10.
    explicit BeamformingMatrix(CMatrix w);

    static BeamformingMatrix normalized(CMatrix w);
    static BeamformingMatrix uniform(int n_t, int num_users);

    const CMatrix& matrix() const { return w_; }
    CVector column(int k) const { return w_.col(k); }
    int num_antennas() const { return static_cast<int>(w_.rows()); }
    int num_users() const { return static_cast<int>(w_.cols()); }

private:
    CMatrix w_;
};

/// C_x = P_d w w^H.
CMatrix tx_covariance(const CVector& w, double p_data);

/// The block operator mapping an N x N autocorrelation D of vec(H) to the
/// N_r x N_r matrix E[H C_x H^H]. With D' = P_c^H D P_c and D'^(i,j) its
/// N_t x N_t blocks, entry (i, j) is sum_ab D'^(i,j)_ab [C_x]_ab. The
/// adjoint is Z -> C_x^T kron Z.
CMatrix a_operator(const CMatrix& d, const CMatrix& c_x);

/// Same operator for C_x = p w w^H without forming C_x or P_c.
CMatrix a_operator(const CMatrix& d, const CVector& w, double p);

/// One user's view of a data slot.
struct UserSlotContext {
    CVector z;                     // channel estimate; empty on deterministic paths
    const SlotStats* stats = nullptr;
    CVector w;                     // unit-norm beamformer
    double p_data = 1.0;

    CMatrix c_x() const { return tx_covariance(w, p_data); }
};

/// F = sum_k alpha_k^2 A_k(Q_k + z_k z_k^H) + sigma_d2 I.
CMatrix f_matrix(std::span<const UserSlotContext> contexts, std::span<const double> alphas, double sigma_d2);

/// sigma_d^2 I + sum_k alpha_k^2 A_k(Q_k): the part of F that does not depend on the estimates.
CMatrix f_matrix_base(std::span<const UserSlotContext> contexts, std::span<const double> alphas, double sigma_d2);

/// base + sum_k alpha_k^2 p_k (J_k w_k)(J_k w_k)^H over contexts carrying an estimate.
CMatrix add_estimate_terms(CMatrix base, std::span<const UserSlotContext> contexts, std::span<const double> alphas);

/// F_k = F - alpha^2 A_k(z z^H): F with user k's own estimated signal removed.
CMatrix deflate_f(const UserSlotContext& ctx, const CMatrix& f, double alpha);

/// MMSE receive row g = alpha sqrt(P_d) w^H J^H F^{-1}, J = unvec(z).
CMatrix mmse_combiner(const UserSlotContext& ctx, const CMatrix& f, double alpha, double p_data);

/// gamma = alpha^2 z^H (C_x^T kron F_k^{-1}) z.
double instantaneous_sinr(const UserSlotContext& ctx, const CMatrix& f, double alpha);

/// All users' SINRs from one factorization of F: with s = alpha^2 p u^H F^{-1} u
/// and u = J w, the deflated form equals s / (1 - s).
std::vector<double> instantaneous_sinrs(std::span<const UserSlotContext> contexts, std::span<const double> alphas,
                                        const CMatrix& f);

/// log(1 + gamma) in the given base.
double random_se(double gamma, LogBase base = LogBase::kTwo);

} // namespace agingmimo
