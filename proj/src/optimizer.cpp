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

#include "agingmimo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

#include "agingmimo/channel.hpp"
#include "agingmimo/parallel.hpp"

namespace agingmimo {

namespace {

constexpr double kMinStep = 1e-12;

CMatrix normalize_columns(CMatrix w) {
    for (Eigen::Index k = 0; k < w.cols(); ++k)
        w.col(k) /= w.col(k).norm();
    return w;
}

class Objective {
public:
    Objective(const SystemConfig& cfg, const ScheduleStats& stats, const FixedPointOptions& fp)
        : cfg_(cfg), stats_(stats), fp_(fp) {}

    double operator()(const CMatrix& w) const {
        return sse_objective(cfg_, stats_, BeamformingMatrix::normalized(w), fp_).sse;
    }

    // Central differences of f(normalize(W)) over real and imaginary parts.
    CMatrix gradient(const CMatrix& w, double h) const {
        CMatrix g(w.rows(), w.cols());
        for (Eigen::Index k = 0; k < w.cols(); ++k) {
            for (Eigen::Index a = 0; a < w.rows(); ++a) {
                double parts[2];
                const Complex dirs[2] = {Complex(h, 0.0), Complex(0.0, h)};
                for (int p = 0; p < 2; ++p) {
                    CMatrix plus = w, minus = w;
                    plus(a, k) += dirs[p];
                    minus(a, k) -= dirs[p];
                    parts[p] = ((*this)(plus) - (*this)(minus)) / (2.0 * h);
                }
                g(a, k) = Complex(parts[0], parts[1]);
            }
        }
        return g;
    }

private:
    const SystemConfig& cfg_;
    const ScheduleStats& stats_;
    FixedPointOptions fp_;
};

struct AscentTrace {
    CMatrix w;
    double value = 0.0;
    int iterations = 0;
    std::vector<double> history;
};

AscentTrace ascend(const Objective& f, CMatrix w, const BeamformingOptions& opts) {
    AscentTrace out{w, f(w), 0, {}};
    out.history.push_back(out.value);
    double step = 1.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        const CMatrix g = f.gradient(out.w, opts.gradient_step);
        if (g.squaredNorm() == 0.0)
            break;
        bool accepted = false;
        double improvement = 0.0;
        while (step >= kMinStep) {
            const CMatrix cand = normalize_columns(out.w + step * g);
            const double value = f(cand);
            const double predicted = frobenius_inner(g, cand - out.w).real();
            if (value >= out.value && value >= out.value + opts.armijo * predicted) {
                improvement = value - out.value;
                out.w = cand;
                out.value = value;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            break;
        out.iterations = it + 1;
        out.history.push_back(out.value);
        if (improvement < opts.min_improvement)
            break;
        step = std::min(2.0 * step, 1e3);
    }
    return out;
}

CMatrix random_start(int n_t, int num_users, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix w(n_t, num_users);
    for (Eigen::Index k = 0; k < w.cols(); ++k)
        for (Eigen::Index a = 0; a < w.rows(); ++a) {
            const double re = normal(rng);
            const double im = normal(rng);
            w(a, k) = Complex(re, im);
        }
    return normalize_columns(w);
}

int duration(const std::vector<int>& q) {
    return std::accumulate(q.begin(), q.end(), 0) + static_cast<int>(q.size());
}

// True when candidate a should replace the incumbent b.
bool better(const FrameCandidate& a, const FrameCandidate& b) {
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(a.sse), std::abs(b.sse)));
    if (a.sse > b.sse + tol)
        return true;
    if (a.sse < b.sse - tol)
        return false;
    if (duration(a.q) != duration(b.q))
        return duration(a.q) < duration(b.q);
    return a.q < b.q;
}

} // namespace

BeamformingMatrix dominant_eigen_beamformers(const SystemConfig& cfg) {
    const CMatrix r_t = build_spatial_correlation(cfg.rho_t, cfg.n_t);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r_t);
    CVector v = es.eigenvectors().col(cfg.n_t - 1);
    if (std::abs(v(0)) > 0.0)
        v *= std::conj(v(0)) / std::abs(v(0));
    CMatrix w(cfg.n_t, cfg.num_users());
    for (int k = 0; k < cfg.num_users(); ++k)
        w.col(k) = v;
    return BeamformingMatrix::normalized(std::move(w));
}

BeamformingResult optimize_beamforming(const SystemConfig& cfg, const ScheduleStats& stats,
                                       const BeamformingOptions& opts) {
    const Objective f(cfg, stats, opts.fixed_point);
    if (cfg.n_t == 1) {
        BeamformingMatrix w(CMatrix::Ones(1, cfg.num_users()));
        const double value = f(w.matrix());
        return {w, value, 0, {value}, {value}};
    }

    const CMatrix starts[3] = {dominant_eigen_beamformers(cfg).matrix(),
                               BeamformingMatrix::uniform(cfg.n_t, cfg.num_users()).matrix(),
                               random_start(cfg.n_t, cfg.num_users(), opts.seed)};
    std::optional<AscentTrace> best;
    std::vector<double> start_values;
    for (const CMatrix& s : starts) {
        AscentTrace t = ascend(f, s, opts);
        start_values.push_back(t.history.front());
        if (!best || t.value > best->value)
            best = std::move(t);
    }
    return {BeamformingMatrix::normalized(best->w), best->value, best->iterations, best->history, start_values};
}

BeamformingResult optimize_beamforming(const SystemConfig& cfg, const FrameSchedule& schedule,
                                       const BeamformingOptions& opts) {
    return optimize_beamforming(cfg, build_schedule_stats(cfg, schedule), opts);
}

std::vector<std::vector<int>> enumerate_schedules(int q_max, int m_max, bool equal_q_only) {
    if (q_max < 1 || m_max < 1)
        throw std::invalid_argument("enumerate_schedules: q_max and m_max must be >= 1");
    std::vector<std::vector<int>> out;
    for (int m = 1; m <= m_max; ++m) {
        if (equal_q_only) {
            for (int q = 1; q <= q_max; ++q)
                out.emplace_back(static_cast<std::size_t>(m), q);
            continue;
        }
        std::vector<int> q(static_cast<std::size_t>(m), 1);
        while (true) {
            out.push_back(q);
            int pos = m - 1;
            while (pos >= 0 && q[pos] == q_max)
                q[pos--] = 1;
            if (pos < 0)
                break;
            ++q[pos];
        }
    }
    return out;
}

namespace {

struct CandidateOutcome {
    FrameCandidate candidate;
    std::optional<BeamformingMatrix> w;
};

OptimizationResult search(const SystemConfig& cfg, const FrameSearchOptions& opts,
                          const std::function<CandidateOutcome(const std::vector<int>&)>& evaluate) {
    const auto schedules = enumerate_schedules(cfg.q_max, cfg.m_max, opts.equal_q_only);
    std::vector<std::optional<CandidateOutcome>> outcomes(schedules.size());
    parallel_for(schedules.size(), opts.threads, [&](std::size_t i) { outcomes[i] = evaluate(schedules[i]); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i)
        if (better(outcomes[i]->candidate, outcomes[best]->candidate))
            best = i;

    const CandidateOutcome& win = *outcomes[best];
    OptimizationResult out{win.candidate.q, static_cast<int>(win.candidate.q.size()), *win.w,
                           win.candidate.sse, win.candidate.fp_iterations, {}};
    for (const auto& o : outcomes)
        out.trace.push_back(o->candidate);

    // The reported optimum must reproduce under a fresh evaluation.
    const SseValue check = sse_objective(cfg, build_schedule(out.best_q), out.best_w, opts.beamforming.fixed_point);
    if (std::abs(check.sse - out.best_sse) > 1e-9 * std::max(1.0, std::abs(check.sse)))
        throw std::logic_error("optimizer: best SSE does not reproduce on re-evaluation");
    out.best_sse = check.sse;
    return out;
}

} // namespace

OptimizationResult optimize_frames(const SystemConfig& cfg, const BeamformingMatrix& w,
                                   const FrameSearchOptions& opts) {
    return search(cfg, opts, [&](const std::vector<int>& q) {
        const SseValue v = sse_objective(cfg, build_schedule(q), w, opts.beamforming.fixed_point);
        return CandidateOutcome{{q, v.sse, v.max_iterations}, w};
    });
}

OptimizationResult joint_optimize(const SystemConfig& cfg, const FrameSearchOptions& opts) {
    return search(cfg, opts, [&](const std::vector<int>& q) {
        const ScheduleStats stats = build_schedule_stats(cfg, build_schedule(q));
        const BeamformingResult bf = optimize_beamforming(cfg, stats, opts.beamforming);
        const SseValue v = sse_objective(cfg, stats, bf.w, opts.beamforming.fixed_point);
        return CandidateOutcome{{q, v.sse, v.max_iterations}, bf.w};
    });
}

} // namespace agingmimo
