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

#include "agingmimo/linkmath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace agingmimo {

namespace {

Eigen::Index receive_dim(const CMatrix& d, Eigen::Index n_t) {
    if (d.rows() != d.cols() || n_t < 1 || d.rows() % n_t != 0)
        throw DimensionMismatchError("a_operator: D is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                                     ", not a multiple of N_t = " + std::to_string(n_t));
    return d.rows() / n_t;
}

CMatrix estimate_matrix(const UserSlotContext& ctx) {
    const auto n_t = ctx.w.size();
    return unvec(ctx.z, ctx.z.size() / n_t, n_t);
}

} // namespace

BeamformingMatrix::BeamformingMatrix(CMatrix w) : w_(std::move(w)) {
    if (w_.rows() < 1 || w_.cols() < 1)
        throw std::invalid_argument("BeamformingMatrix: empty matrix");
    for (Eigen::Index k = 0; k < w_.cols(); ++k)
        if (std::abs(w_.col(k).norm() - 1.0) > 1e-10)
            throw std::invalid_argument("BeamformingMatrix: column " + std::to_string(k) + " is not unit norm");
}

BeamformingMatrix BeamformingMatrix::normalized(CMatrix w) {
    for (Eigen::Index k = 0; k < w.cols(); ++k) {
        const double nrm = w.col(k).norm();
        if (!(nrm > 0.0))
            throw std::invalid_argument("BeamformingMatrix::normalized: zero column " + std::to_string(k));
        w.col(k) /= nrm;
    }
    return BeamformingMatrix(std::move(w));
}

BeamformingMatrix BeamformingMatrix::uniform(int n_t, int num_users) {
    return BeamformingMatrix(CMatrix::Constant(n_t, num_users, 1.0 / std::sqrt(static_cast<double>(n_t))));
}

CMatrix tx_covariance(const CVector& w, double p_data) {
    return p_data * w * w.adjoint();
}

CMatrix a_operator(const CMatrix& d, const CMatrix& c_x) {
    if (c_x.rows() != c_x.cols())
        throw DimensionMismatchError("a_operator: C_x must be square");
    const Eigen::Index n_t = c_x.rows();
    const Eigen::Index n_r = receive_dim(d, n_t);
    // P_c maps vec of an N_t x N_r matrix to vec of its transpose, so D' is
    // the autocorrelation of vec(H^T), blocked by receive index.
    const CMatrix p_c = commutation_matrix(n_t, n_r);
    const CMatrix d_prime = p_c.adjoint() * d * p_c;
    CMatrix out(n_r, n_r);
    for (Eigen::Index i = 0; i < n_r; ++i)
        for (Eigen::Index j = 0; j < n_r; ++j)
            out(i, j) = d_prime.block(i * n_t, j * n_t, n_t, n_t).cwiseProduct(c_x).sum();
    return out;
}

CMatrix a_operator(const CMatrix& d, const CVector& w, double p) {
    const Eigen::Index n_t = w.size();
    const Eigen::Index n_r = receive_dim(d, n_t);
    // p (w^T kron I) D (w^T kron I)^H, accumulated block by block.
    CMatrix out = CMatrix::Zero(n_r, n_r);
    for (Eigen::Index a = 0; a < n_t; ++a)
        for (Eigen::Index b = 0; b < n_t; ++b)
            out.noalias() += (w(a) * std::conj(w(b))) * d.block(a * n_r, b * n_r, n_r, n_r);
    return p * out;
}

CMatrix f_matrix_base(std::span<const UserSlotContext> contexts, std::span<const double> alphas, double sigma_d2) {
    if (contexts.empty() || contexts.size() != alphas.size())
        throw DimensionMismatchError("f_matrix: need one alpha per user context");
    if (contexts.front().stats == nullptr)
        throw std::invalid_argument("f_matrix: context without slot statistics");
    const Eigen::Index n_r = receive_dim(contexts.front().stats->q, contexts.front().w.size());
    CMatrix f = CMatrix::Identity(n_r, n_r) * sigma_d2;
    for (std::size_t k = 0; k < contexts.size(); ++k) {
        const UserSlotContext& ctx = contexts[k];
        if (ctx.stats == nullptr)
            throw std::invalid_argument("f_matrix: context without slot statistics");
        if (receive_dim(ctx.stats->q, ctx.w.size()) != n_r)
            throw DimensionMismatchError("f_matrix: users disagree on N_r");
        f.noalias() += alphas[k] * alphas[k] * a_operator(ctx.stats->q, ctx.w, ctx.p_data);
    }
    return f;
}

CMatrix add_estimate_terms(CMatrix base, std::span<const UserSlotContext> contexts, std::span<const double> alphas) {
    if (contexts.size() != alphas.size())
        throw DimensionMismatchError("f_matrix: need one alpha per user context");
    for (std::size_t k = 0; k < contexts.size(); ++k) {
        const UserSlotContext& ctx = contexts[k];
        if (ctx.z.size() == 0)
            continue;
        if (ctx.z.size() != base.rows() * ctx.w.size())
            throw DimensionMismatchError("f_matrix: estimate length does not match N_r N_t");
        // A(z z^H) = p (J w)(J w)^H
        const CVector u = estimate_matrix(ctx) * ctx.w;
        base.noalias() += (alphas[k] * alphas[k] * ctx.p_data) * u * u.adjoint();
    }
    return base;
}

CMatrix f_matrix(std::span<const UserSlotContext> contexts, std::span<const double> alphas, double sigma_d2) {
    return add_estimate_terms(f_matrix_base(contexts, alphas, sigma_d2), contexts, alphas);
}

CMatrix deflate_f(const UserSlotContext& ctx, const CMatrix& f, double alpha) {
    if (ctx.z.size() == 0)
        return f;
    const CVector u = estimate_matrix(ctx) * ctx.w;
    CMatrix f_k = f;
    f_k.noalias() -= (alpha * alpha * ctx.p_data) * u * u.adjoint();
    return f_k;
}

CMatrix mmse_combiner(const UserSlotContext& ctx, const CMatrix& f, double alpha, double p_data) {
    if (ctx.z.size() == 0)
        throw std::invalid_argument("mmse_combiner: no channel estimate");
    const CMatrix j = estimate_matrix(ctx);
    const CVector u = j * ctx.w;
    return (alpha * std::sqrt(p_data)) * herm_solve(f, u).adjoint();
}

double instantaneous_sinr(const UserSlotContext& ctx, const CMatrix& f, double alpha) {
    if (ctx.z.size() == 0)
        return 0.0;
    // z^H (C_x^T kron X) z = trace(J^H X J C_x) = p (J w)^H X (J w) for C_x = p w w^H.
    const CVector u = estimate_matrix(ctx) * ctx.w;
    const CMatrix f_k = deflate_f(ctx, f, alpha);
    const double gamma = alpha * alpha * ctx.p_data * (u.adjoint() * herm_solve(f_k, u))(0, 0).real();
    return std::max(gamma, 0.0);
}

std::vector<double> instantaneous_sinrs(std::span<const UserSlotContext> contexts, std::span<const double> alphas,
                                        const CMatrix& f) {
    if (contexts.size() != alphas.size())
        throw DimensionMismatchError("instantaneous_sinrs: need one alpha per user context");
    Eigen::LLT<CMatrix> llt(f);
    if (llt.info() != Eigen::Success) {
        std::vector<double> out;
        for (std::size_t k = 0; k < contexts.size(); ++k)
            out.push_back(instantaneous_sinr(contexts[k], f, alphas[k]));
        return out;
    }
    std::vector<double> out(contexts.size(), 0.0);
    for (std::size_t k = 0; k < contexts.size(); ++k) {
        const UserSlotContext& ctx = contexts[k];
        if (ctx.z.size() == 0)
            continue;
        const CVector u = estimate_matrix(ctx) * ctx.w;
        const double s = alphas[k] * alphas[k] * ctx.p_data * u.dot(llt.solve(u)).real();
        // F_k = F - c u u^H stays positive definite, so s < 1 up to rounding.
        out[k] = s < 1.0 ? std::max(s / (1.0 - s), 0.0) : instantaneous_sinr(ctx, f, alphas[k]);
    }
    return out;
}

double random_se(double gamma, LogBase base) {
    if (gamma < 0.0)
        throw std::invalid_argument("random_se: negative SINR");
    const double nats = std::log1p(gamma);
    return base == LogBase::kTwo ? nats / std::numbers::ln2 : nats;
}

} // namespace agingmimo
