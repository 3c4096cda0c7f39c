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

#include "agingmimo/mcoracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "agingmimo/parallel.hpp"

namespace agingmimo {

namespace {

constexpr int kChunk = 256;
constexpr std::uint64_t kPilotKey = std::numeric_limits<std::uint64_t>::max();

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 8) {
        double s = 0.0;
        for (double v : x)
            s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double relative_frobenius(const CMatrix& estimate, const CMatrix& truth) {
    const double denom = truth.norm();
    const double diff = (estimate - truth).norm();
    return denom > 0.0 ? diff / denom : diff;
}

std::size_t pilot_index(const FrameSchedule& s, Time t) {
    const auto& p = s.pilot_times();
    return static_cast<std::size_t>(std::find(p.begin(), p.end(), t) - p.begin());
}

struct SlotPlan {
    std::vector<std::size_t> pilots; // indices into schedule.pilot_times()
    CMatrix gain;                    // N x (P N)
    CMatrix c_hat_root;
};

struct UserPlan {
    std::optional<JointChannelSampler> sampler; // over all pilot times
    double beta = 0.0;
    std::vector<SlotPlan> slots;
};

McReport run_once(const SystemConfig& cfg, const FrameSchedule& schedule, const BeamformingMatrix& w,
                  const McConfig& mc) {
    if (mc.num_samples < 1)
        throw std::invalid_argument("validate_deterministic: num_samples must be >= 1");
    if (w.num_users() != cfg.num_users() || w.num_antennas() != cfg.n_t)
        throw DimensionMismatchError("validate_deterministic: beamformer shape does not match the configuration");

    const ScheduleStats stats = build_schedule_stats(cfg, schedule);
    const std::size_t num_users = cfg.users.size();
    const std::size_t num_slots = stats.slots.size();
    const std::size_t n = static_cast<std::size_t>(mc.num_samples);
    const std::vector<double> alphas = user_alphas(cfg);
    const std::vector<double> powers = user_data_powers(cfg);

    McReport report;
    report.num_samples = mc.num_samples;
    report.deterministic_se.assign(num_users, 0.0);
    for (const auto& slot : stats.slots) {
        const DetSlotSE se = deterministic_se({slot, &w, alphas, powers, cfg.sigma_d2}, cfg.log_base);
        for (std::size_t k = 0; k < num_users; ++k)
            report.deterministic_se[k] += se.per_user_se[k] / static_cast<double>(num_slots);
    }

    std::vector<UserPlan> plans(num_users);
    for (std::size_t k = 0; k < num_users; ++k) {
        const ChannelStats& ch = stats.channels[k];
        UserPlan& plan = plans[k];
        plan.beta = effective_pilot_noise(cfg.users[k], cfg.tau_p, schedule.num_frames());
        if (!mc.fast_path)
            plan.sampler.emplace(ch, schedule.pilot_times());
        for (std::size_t s = 0; s < num_slots; ++s) {
            const DataSlot& ds = schedule.data_slots()[s];
            const std::vector<Time> window = pilot_window(schedule, ds.frame, cfg.pilot_window);
            SlotPlan sp;
            for (Time t : window)
                sp.pilots.push_back(pilot_index(schedule, t));
            sp.gain = lmmse_gain(assemble_E(ch, window, ds.time), assemble_M(ch, window), plan.beta);
            if (mc.fast_path)
                sp.c_hat_root = psd_sqrt(stats.slots[s][k].c_hat);
            plan.slots.push_back(std::move(sp));
        }
    }

    std::vector<CMatrix> f_base;
    for (std::size_t s = 0; s < num_slots; ++s) {
        std::vector<UserSlotContext> ctx(num_users);
        for (std::size_t k = 0; k < num_users; ++k)
            ctx[k] = {CVector(), &stats.slots[s][k], w.column(static_cast<int>(k)), powers[k]};
        f_base.push_back(f_matrix_base(ctx, alphas, cfg.sigma_d2));
    }

    const Eigen::Index dim = cfg.channel_dim();
    const std::size_t cells = num_users * num_slots;
    std::vector<double> se(n * cells), gamma(n * cells);
    const std::size_t num_chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::vector<CMatrix>> chunk_cov(num_chunks);

    parallel_for(num_chunks, mc.threads, [&](std::size_t c) {
        std::vector<CMatrix> cov(cells, CMatrix::Zero(dim, dim));
        std::vector<CVector> z(cells);
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t d = c * kChunk; d < end; ++d) {
            for (std::size_t k = 0; k < num_users; ++k) {
                const CVector& mean = stats.channels[k].mean;
                const UserPlan& plan = plans[k];
                if (mc.fast_path) {
                    for (std::size_t s = 0; s < num_slots; ++s) {
                        auto rng = keyed_generator(mc.seed, k, d, s);
                        z[s * num_users + k] = mean + plan.slots[s].c_hat_root * complex_gaussian(dim, 1, rng);
                    }
                } else {
                    auto rng = keyed_generator(mc.seed, k, d, kPilotKey);
                    const CMatrix h = plan.sampler->draw(rng).colwise() - mean;
                    const CMatrix y = synthesize_pilot_obs(h, plan.beta, rng);
                    for (std::size_t s = 0; s < num_slots; ++s) {
                        const SlotPlan& sp = plan.slots[s];
                        CVector stacked(dim * static_cast<Eigen::Index>(sp.pilots.size()));
                        for (std::size_t p = 0; p < sp.pilots.size(); ++p)
                            stacked.segment(static_cast<Eigen::Index>(p) * dim, dim) =
                                y.col(static_cast<Eigen::Index>(sp.pilots[p]));
                        z[s * num_users + k] = mean + sp.gain * stacked;
                    }
                }
                for (std::size_t s = 0; s < num_slots; ++s) {
                    const CVector centered = z[s * num_users + k] - mean;
                    cov[s * num_users + k].noalias() += centered * centered.adjoint();
                }
            }
            for (std::size_t s = 0; s < num_slots; ++s) {
                std::vector<UserSlotContext> ctx(num_users);
                for (std::size_t k = 0; k < num_users; ++k)
                    ctx[k] = {z[s * num_users + k], &stats.slots[s][k], w.column(static_cast<int>(k)), powers[k]};
                const std::vector<double> sinr = instantaneous_sinrs(ctx, alphas, add_estimate_terms(f_base[s], ctx, alphas));
                for (std::size_t k = 0; k < num_users; ++k) {
                    const double g = sinr[k];
                    const std::size_t cell = k * num_slots + s;
                    gamma[cell * n + d] = g;
                    se[cell * n + d] = random_se(g, cfg.log_base);
                }
            }
        }
        chunk_cov[c] = std::move(cov);
    });

    report.empirical_mean_se.assign(num_users, 0.0);
    for (std::size_t k = 0; k < num_users; ++k) {
        for (std::size_t s = 0; s < num_slots; ++s) {
            const std::size_t cell = k * num_slots + s;
            const std::span<const double> se_cell(se.data() + cell * n, n);
            const std::span<const double> gamma_cell(gamma.data() + cell * n, n);
            const double mean_se = pairwise_sum(se_cell) / static_cast<double>(n);
            const double mean_gamma = pairwise_sum(gamma_cell) / static_cast<double>(n);
            report.empirical_mean_se[k] += mean_se / static_cast<double>(num_slots);
            if (mean_se > random_se(mean_gamma, cfg.log_base) + 1e-12)
                report.jensen_holds = false;

            CMatrix cov = CMatrix::Zero(dim, dim);
            for (const auto& cc : chunk_cov)
                cov += cc[s * num_users + k];
            cov /= static_cast<double>(n);
            report.empirical_estimate_cov_error =
                std::max(report.empirical_estimate_cov_error, relative_frobenius(cov, stats.slots[s][k].c_hat));
        }
    }
    for (std::size_t k = 0; k < num_users; ++k) {
        const double det = report.deterministic_se[k];
        report.relative_error.push_back(std::abs(report.empirical_mean_se[k] - det) / std::max(det, 1e-12));
    }
    return report;
}

} // namespace

double McReport::max_relative_error() const {
    return relative_error.empty() ? 0.0 : *std::max_element(relative_error.begin(), relative_error.end());
}

std::mt19937_64 keyed_generator(std::uint64_t seed, std::uint64_t user, std::uint64_t draw, std::uint64_t slot) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(user), hi(user), lo(draw), hi(draw), lo(slot), hi(slot)};
    return std::mt19937_64(seq);
}

CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i, j) = Complex(re, im);
        }
    return out;
}

JointChannelSampler::JointChannelSampler(const ChannelStats& stats, std::span<const Time> times)
    : mean_(stats.mean), times_(static_cast<Eigen::Index>(times.size())) {
    if (times.empty())
        throw std::invalid_argument("JointChannelSampler: no sample times");
    const Eigen::Index n = stats.dim();
    cov_.resize(n * times_, n * times_);
    for (Eigen::Index a = 0; a < times_; ++a)
        for (Eigen::Index b = 0; b < times_; ++b)
            cov_.block(a * n, b * n, n, n) = cross_covariance(stats, times[a], times[b]);
    root_ = psd_sqrt(cov_);
}

CMatrix JointChannelSampler::draw(std::mt19937_64& rng) const {
    const CVector x = root_ * complex_gaussian(root_.cols(), 1, rng);
    CMatrix h = unvec(x, mean_.size(), times_);
    h.colwise() += mean_;
    return h;
}

CMatrix sample_joint_channel(const ChannelStats& stats, std::span<const Time> times, std::uint64_t seed) {
    auto rng = keyed_generator(seed, 0, 0, 0);
    return JointChannelSampler(stats, times).draw(rng);
}

CMatrix synthesize_pilot_obs(const CMatrix& h_at_pilots, double beta, std::mt19937_64& rng) {
    if (!(beta > 0.0))
        throw std::invalid_argument("synthesize_pilot_obs: beta must be positive");
    return h_at_pilots + std::sqrt(beta) * complex_gaussian(h_at_pilots.rows(), h_at_pilots.cols(), rng);
}

CVector empirical_lmmse(const CVector& y_stacked, const CMatrix& e, const CMatrix& m, double beta,
                        const CVector& mean) {
    if (y_stacked.size() != m.rows())
        throw DimensionMismatchError("empirical_lmmse: observation length does not match M");
    return mean + lmmse_gain(e, m, beta) * y_stacked;
}

LmmseCheck lmmse_empirical_check(const SystemConfig& cfg, int user, const FrameSchedule& schedule, int slot_index,
                                 int num_samples, std::uint64_t seed, int threads) {
    if (num_samples < 1)
        throw std::invalid_argument("lmmse_empirical_check: num_samples must be >= 1");
    const ChannelStats ch = build_channel_stats(cfg, cfg.users.at(user));
    const DataSlot& ds = schedule.data_slots().at(slot_index);
    const std::vector<Time> window = pilot_window(schedule, ds.frame, cfg.pilot_window);
    const double beta = effective_pilot_noise(cfg.users[user], cfg.tau_p, schedule.num_frames());
    const CMatrix e = assemble_E(ch, window, ds.time);
    const CMatrix m = assemble_M(ch, window);
    const CMatrix gain = lmmse_gain(e, m, beta);
    const SlotStats closed = slot_stats(cfg, user, ch, schedule, ds.frame, ds.time);

    std::vector<Time> times = window;
    times.push_back(ds.time);
    const JointChannelSampler sampler(ch, times);
    const Eigen::Index dim = ch.dim();
    const auto num_pilots = static_cast<Eigen::Index>(window.size());

    const std::size_t n = static_cast<std::size_t>(num_samples);
    const std::size_t num_chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::pair<CMatrix, CMatrix>> partial(num_chunks);
    parallel_for(num_chunks, threads, [&](std::size_t c) {
        CMatrix est = CMatrix::Zero(dim, dim), err = CMatrix::Zero(dim, dim);
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t d = c * kChunk; d < end; ++d) {
            auto rng = keyed_generator(seed, static_cast<std::uint64_t>(user), d, kPilotKey);
            const CMatrix h = sampler.draw(rng).colwise() - ch.mean;
            const CMatrix y = synthesize_pilot_obs(h.leftCols(num_pilots), beta, rng);
            const CVector z = empirical_lmmse(vec(y), e, m, beta, ch.mean);
            const CVector centered = z - ch.mean;
            const CVector miss = (h.col(num_pilots) + ch.mean) - z;
            est.noalias() += centered * centered.adjoint();
            err.noalias() += miss * miss.adjoint();
        }
        partial[c] = {std::move(est), std::move(err)};
    });

    CMatrix est = CMatrix::Zero(dim, dim), err = CMatrix::Zero(dim, dim);
    for (const auto& [a, b] : partial) {
        est += a;
        err += b;
    }
    est /= static_cast<double>(n);
    err /= static_cast<double>(n);
    return {relative_frobenius(est, closed.c_hat), relative_frobenius(err, closed.q),
            relative_frobenius(est + err, ch.spatial_cov)};
}

McReport validate_deterministic(const SystemConfig& cfg, const FrameSchedule& schedule, const BeamformingMatrix& w,
                                const McConfig& mc) {
    McReport report = run_once(cfg, schedule, w, mc);
    for (int n_r : mc.nr_sweep) {
        SystemConfig swept = cfg;
        swept.n_r = n_r;
        McConfig inner = mc;
        inner.nr_sweep.clear();
        report.nr_sweep.emplace_back(n_r, run_once(swept, schedule, w, inner).max_relative_error());
    }
    return report;
}

} // namespace agingmimo
