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

#include "agingmimo/detse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace agingmimo {

namespace {

struct Operands {
    std::vector<CMatrix> signal; // A_k(R_zk)
    CMatrix base;                // S + sigma_d2 I
    CMatrix s;
};

void check_inputs(const DetSlotInputs& in) {
    const std::size_t k = in.stats.size();
    if (k == 0 || in.w == nullptr)
        throw std::invalid_argument("deterministic_interference: empty inputs");
    if (in.alphas.size() != k || in.p_data.size() != k || static_cast<std::size_t>(in.w->num_users()) != k)
        throw DimensionMismatchError("deterministic_interference: per-user inputs disagree in length");
}

Operands build_operands(const DetSlotInputs& in) {
    check_inputs(in);
    Operands ops;
    for (std::size_t k = 0; k < in.stats.size(); ++k) {
        const CVector w = in.w->column(static_cast<int>(k));
        const double a2 = in.alphas[k] * in.alphas[k];
        ops.signal.push_back(a_operator(in.stats[k].r_z, w, in.p_data[k]));
        CMatrix ak_q = a2 * a_operator(in.stats[k].q, w, in.p_data[k]);
        if (k == 0)
            ops.s = std::move(ak_q);
        else
            ops.s += ak_q;
    }
    ops.base = ops.s;
    ops.base.diagonal().array() += in.sigma_d2;
    return ops;
}

CMatrix bracket(const DetSlotInputs& in, const Operands& ops, std::span<const double> omega, std::size_t j) {
    CMatrix b = ops.base;
    for (std::size_t l = 0; l < ops.signal.size(); ++l) {
        if (l == j)
            continue;
        const double a2 = in.alphas[l] * in.alphas[l];
        b += (a2 / (1.0 + a2 * omega[l])) * ops.signal[l];
    }
    return b;
}

std::vector<double> apply_map(const DetSlotInputs& in, const Operands& ops, std::span<const double> omega) {
    std::vector<double> out(ops.signal.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = std::max(0.0, herm_solve(bracket(in, ops, omega, j), ops.signal[j]).trace().real());
    return out;
}

double scaled_residual(std::span<const double> omega, std::span<const double> image) {
    double r = 0.0;
    for (std::size_t j = 0; j < omega.size(); ++j)
        r = std::max(r, std::abs(omega[j] - image[j]) / std::max(1.0, std::abs(image[j])));
    return r;
}

FixedPointSolution iterate(const DetSlotInputs& in, const Operands& ops, const FixedPointOptions& opts,
                           double start) {
    std::vector<double> omega(ops.signal.size(), start);
    double residual = 0.0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const std::vector<double> image = apply_map(in, ops, omega);
        residual = scaled_residual(omega, image);
        if (residual <= opts.tolerance)
            return {std::move(omega), residual, it, false};
        for (std::size_t j = 0; j < omega.size(); ++j)
            omega[j] = (1.0 - opts.damping) * omega[j] + opts.damping * image[j];
    }
    throw NoConvergenceError("fixed point did not converge in " + std::to_string(opts.max_iterations) +
                                 " iterations (residual " + std::to_string(residual) + ")",
                             residual);
}

} // namespace

std::vector<double> fixed_point_map(const DetSlotInputs& in, std::span<const double> omega) {
    const Operands ops = build_operands(in);
    if (omega.size() != ops.signal.size())
        throw DimensionMismatchError("fixed_point_map: omega has the wrong length");
    return apply_map(in, ops, omega);
}

InterferenceSolution deterministic_interference(const DetSlotInputs& in, const FixedPointOptions& opts) {
    const Operands ops = build_operands(in);
    InterferenceSolution out;
    out.fixed_point = iterate(in, ops, opts, 0.0);
    if (opts.check_alternate_start) {
        const FixedPointSolution alt = iterate(in, ops, opts, 1.0);
        for (std::size_t j = 0; j < alt.omega.size(); ++j) {
            const double scale = std::max(1.0, std::abs(out.fixed_point.omega[j]));
            if (std::abs(alt.omega[j] - out.fixed_point.omega[j]) > 10.0 * opts.tolerance * scale)
                out.fixed_point.alternate_start_disagrees = true;
        }
    }
    for (std::size_t j = 0; j < ops.signal.size(); ++j)
        out.brackets.push_back(bracket(in, ops, out.fixed_point.omega, j));
    out.s = ops.s;
    return out;
}

DetSlotSE deterministic_se(const DetSlotInputs& in, LogBase base, const FixedPointOptions& opts) {
    DetSlotSE out;
    out.slot_time = in.stats.front().slot_time;
    out.interference = deterministic_interference(in, opts);
    for (std::size_t k = 0; k < in.stats.size(); ++k) {
        const CVector w = in.w->column(static_cast<int>(k));
        const CMatrix& b = out.interference.brackets[k];
        const CMatrix b_inv = herm_solve(b, CMatrix::Identity(b.rows(), b.cols()));
        const CMatrix lifted = kron(w.conjugate() * w.transpose(), b_inv);
        const double a2 = in.alphas[k] * in.alphas[k];
        const double gamma = std::max(0.0, a2 * in.p_data[k] * frobenius_inner(in.stats[k].r_z, lifted).real());
        out.per_user_sinr.push_back(gamma);
        out.per_user_se.push_back(random_se(gamma, base));
    }
    return out;
}

std::vector<double> user_alphas(const SystemConfig& cfg) {
    std::vector<double> out;
    for (const UserParams& u : cfg.users)
        out.push_back(u.alpha);
    return out;
}

std::vector<double> user_data_powers(const SystemConfig& cfg) {
    std::vector<double> out;
    for (const UserParams& u : cfg.users)
        out.push_back(u.p_data);
    return out;
}

SseValue sse_objective(const SystemConfig& cfg, const ScheduleStats& stats, const BeamformingMatrix& w,
                       const FixedPointOptions& opts) {
    const std::vector<double> alphas = user_alphas(cfg);
    const std::vector<double> powers = user_data_powers(cfg);
    SseValue out;
    double total = 0.0;
    for (const std::vector<SlotStats>& slot : stats.slots) {
        const DetSlotInputs in{slot, &w, alphas, powers, cfg.sigma_d2};
        const DetSlotSE se = deterministic_se(in, cfg.log_base, opts);
        for (double v : se.per_user_se)
            total += v;
        out.max_iterations = std::max(out.max_iterations, se.interference.fixed_point.iterations);
        out.max_residual = std::max(out.max_residual, se.interference.fixed_point.residual);
    }
    const int denom = cfg.normalization == SseNormalization::kAllSlots ? stats.schedule.total_slot_count()
                                                                       : stats.schedule.data_slot_count();
    out.sse = total / static_cast<double>(denom);
    return out;
}

SseValue sse_objective(const SystemConfig& cfg, const FrameSchedule& schedule, const BeamformingMatrix& w,
                       const FixedPointOptions& opts) {
    return sse_objective(cfg, build_schedule_stats(cfg, schedule), w, opts);
}

} // namespace agingmimo
