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

// One pass/fail line per acceptance criterion. Pass a criterion number to run
// only that one; with no argument every criterion runs.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "agingmimo/experiments.hpp"

using namespace agingmimo;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---- sweeps shared by criteria 4-8 ----------------------------------------

struct Series {
    std::vector<SweepRow> rows;
    double sse_at(double v) const {
        for (const SweepRow& r : rows)
            if (r.value == v)
                return r.sse;
        throw std::logic_error("missing sweep value");
    }
    int q_at(double v) const {
        for (const SweepRow& r : rows)
            if (r.value == v)
                return r.q.front();
        throw std::logic_error("missing sweep value");
    }
};

Series sweep(SweepAxis axis, std::vector<double> values, int n_t) {
    Experiment ex;
    ex.cfg.n_t = n_t;
    ex.sweep.axis = axis;
    ex.sweep.values = std::move(values);
    ex.sweep.optimize_q = true;
    ex.sweep.optimize_w = n_t > 1;
    RunOptions opts;
    opts.timing = false;
    std::ostringstream log;
    return {run_sweep(ex, opts, log)};
}

const std::vector<double> kNt{1, 2, 3, 4};
const std::vector<double> kDoppler{0.05, 0.1, 0.2, 0.3};
const std::vector<double> kRician{0, 10};
const std::vector<double> kPathloss{-20, 0};

// ---- criteria -------------------------------------------------------------

Verdict concentration() {
    SystemConfig cfg = default_config();
    cfg.n_r = 32;
    const FrameSchedule schedule = build_schedule({cfg.q_max});
    const BeamformingMatrix w = BeamformingMatrix::uniform(cfg.n_t, cfg.num_users());

    McConfig mc;
    mc.num_samples = 10000;
    mc.seed = 1;
    const McReport main = validate_deterministic(cfg, schedule, w, mc);
    bool pass = main.max_relative_error() <= 0.05;
    std::string detail = "N_r=32 rel_err=[";
    for (std::size_t k = 0; k < main.relative_error.size(); ++k)
        detail += (k ? "," : "") + num(main.relative_error[k]);
    detail += "]";

    std::vector<double> err8, err32{main.max_relative_error()};
    SystemConfig small = cfg;
    small.n_r = 8;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        mc.seed = seed;
        err8.push_back(validate_deterministic(small, schedule, w, mc).max_relative_error());
        if (seed > 1)
            err32.push_back(validate_deterministic(cfg, schedule, w, mc).max_relative_error());
    }
    const double m8 = median(err8), m32 = median(err32);
    pass = pass && m32 <= m8;
    detail += " median(N_r=8)=" + num(m8) + " median(N_r=32)=" + num(m32);
    return {pass, detail};
}

Verdict lmmse_empirics() {
    const SystemConfig cfg = default_config();
    const FrameSchedule schedule = build_schedule({cfg.q_max});
    double worst_est = 0.0, worst_err = 0.0;
    for (int slot = 0; slot < schedule.data_slot_count(); ++slot) {
        const LmmseCheck c = lmmse_empirical_check(cfg, 0, schedule, slot, 20000, 100 + slot);
        worst_est = std::max(worst_est, c.estimate_cov_error);
        worst_err = std::max(worst_err, c.error_cov_error);
    }
    return {worst_est <= 0.05 && worst_err <= 0.05,
            "estimate cov err=" + num(worst_est) + " error cov err=" + num(worst_err)};
}

Verdict ratio_form() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> users(1, 3), rx(1, 4), tx(1, 2);
    std::uniform_real_distribution<double> u(0.2, 1.5);
    std::normal_distribution<double> g(0.0, 1.0);
    auto cmat = [&](Eigen::Index r, Eigen::Index c) {
        CMatrix m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i) {
                const double re = g(rng);
                const double im = g(rng);
                m(i, j) = Complex(re, im);
            }
        return m;
    };
    double worst = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        const int k = users(rng);
        const Eigen::Index n_r = rx(rng), n_t = tx(rng), n = n_r * n_t;
        std::vector<SlotStats> stats(static_cast<std::size_t>(k));
        std::vector<UserSlotContext> ctx;
        std::vector<double> alphas;
        for (int j = 0; j < k; ++j) {
            const CMatrix a = cmat(n, n);
            stats[j].q = 0.3 * a * a.adjoint() / static_cast<double>(n);
            alphas.push_back(u(rng));
        }
        for (int j = 0; j < k; ++j) {
            CVector w = cmat(n_t, 1);
            w /= w.norm();
            ctx.push_back({cmat(n, 1), &stats[j], w, u(rng)});
        }
        const double sigma = 0.1 * u(rng);
        const CMatrix f = f_matrix(ctx, alphas, sigma);
        for (int j = 0; j < k; ++j) {
            const CMatrix gm = mmse_combiner(ctx[j], f, alphas[j], ctx[j].p_data);
            const CMatrix gg = gm.adjoint() * gm;
            const CMatrix f_k = deflate_f(ctx[j], f, alphas[j]);
            const double ratio = frobenius_inner(gg, f - f_k).real() / frobenius_inner(gg, f_k).real();
            const double direct = instantaneous_sinr(ctx[j], f, alphas[j]);
            worst = std::max(worst, std::abs(direct - ratio) / std::max(1e-300, std::abs(ratio)));
        }
    }
    return {worst <= 1e-8, "worst relative gap=" + num(worst)};
}

Verdict fixed_point() {
    std::vector<SlotStats> stats(2);
    for (SlotStats& s : stats) {
        s.r_z = CMatrix::Identity(1, 1);
        s.c_hat = s.r_z;
        s.q = CMatrix::Zero(1, 1);
    }
    const BeamformingMatrix w = BeamformingMatrix::uniform(1, 2);
    const std::vector<double> ones{1.0, 1.0};
    const FixedPointSolution sol = deterministic_interference({stats, &w, ones, ones, 1.0}).fixed_point;
    bool pass = std::abs(sol.omega[0] - 0.618034) <= 1e-6 && std::abs(sol.omega[1] - 0.618034) <= 1e-6;
    std::string detail = "omega=" + num(sol.omega[0]);

    double worst_res = 0.0;
    int worst_it = 0, points = 0;
    std::vector<Series> all{sweep(SweepAxis::kNt, kNt, 2),           sweep(SweepAxis::kDoppler, kDoppler, 1),
                            sweep(SweepAxis::kDoppler, kDoppler, 2), sweep(SweepAxis::kRician, kRician, 2),
                            sweep(SweepAxis::kPathlossDb, kPathloss, 1), sweep(SweepAxis::kPathlossDb, kPathloss, 2)};
    for (const Series& s : all)
        for (const SweepRow& r : s.rows) {
            worst_res = std::max(worst_res, r.fp_residual);
            worst_it = std::max(worst_it, r.fp_iterations);
            ++points;
        }
    pass = pass && worst_res <= 1e-9 && worst_it <= 1000;
    detail += " sweep points=" + std::to_string(points) + " max residual=" + num(worst_res) +
              " max iterations=" + std::to_string(worst_it);
    return {pass, detail};
}

Verdict figure_nt() {
    const Series s = sweep(SweepAxis::kNt, kNt, 2);
    bool pass = true;
    std::string detail = "sse=[";
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        detail += (i ? "," : "") + num(s.rows[i].sse);
        if (i > 0 && s.rows[i].sse < s.rows[i - 1].sse)
            pass = false;
    }
    return {pass, detail + "]"};
}

Verdict figure_doppler() {
    const Series one = sweep(SweepAxis::kDoppler, kDoppler, 1);
    const Series two = sweep(SweepAxis::kDoppler, kDoppler, 2);
    bool pass = true;
    std::string detail = "q*=[";
    for (std::size_t i = 0; i < two.rows.size(); ++i) {
        detail += (i ? "," : "") + std::to_string(two.rows[i].q.front());
        if (i > 0 && two.rows[i].q.front() > two.rows[i - 1].q.front())
            pass = false;
    }
    const double gap_low = two.sse_at(0.05) - one.sse_at(0.05);
    const double gap_high = two.sse_at(0.3) - one.sse_at(0.3);
    pass = pass && gap_low > gap_high;
    return {pass, detail + "] gap(0.05)=" + num(gap_low) + " gap(0.3)=" + num(gap_high)};
}

Verdict figure_rician() {
    const Series s = sweep(SweepAxis::kRician, kRician, 2);
    const int q0 = s.q_at(0), q10 = s.q_at(10);
    return {q10 >= q0, "q*(K=0)=" + std::to_string(q0) + " q*(K=10)=" + std::to_string(q10)};
}

Verdict figure_pathloss() {
    const Series one = sweep(SweepAxis::kPathlossDb, kPathloss, 1);
    const Series two = sweep(SweepAxis::kPathlossDb, kPathloss, 2);
    const int q_low = two.q_at(-20), q_high = two.q_at(0);
    const double gap_0 = two.sse_at(0) - one.sse_at(0);
    const double gap_20 = two.sse_at(-20) - one.sse_at(-20);
    return {q_low <= q_high && gap_0 > gap_20, "q*(-20dB)=" + std::to_string(q_low) + " q*(0dB)=" +
                                                   std::to_string(q_high) + " gap(0dB)=" + num(gap_0) +
                                                   " gap(-20dB)=" + num(gap_20)};
}

Verdict properties() {
    std::vector<std::string> failed;
    auto check = [&](bool ok, const std::string& name) {
        if (!ok)
            failed.push_back(name);
    };
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g(0.0, 1.0);
    auto cmat = [&](Eigen::Index r, Eigen::Index c) {
        CMatrix m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i) {
                const double re = g(rng);
                const double im = g(rng);
                m(i, j) = Complex(re, im);
            }
        return m;
    };

    for (int t = 0; t < 20; ++t) {
        const Eigen::Index r = 1 + t % 4, c = 1 + t % 3;
        const CMatrix a = cmat(r, c);
        check((commutation_matrix(r, c) * vec(a) - vec(a.transpose())).norm() < 1e-13, "commutation");

        const CMatrix d = cmat(r * c, r * c), z = cmat(r, r), x = cmat(c, c);
        const CMatrix cx = x * x.adjoint();
        const Complex lhs = frobenius_inner(a_operator(d, cx), z);
        const Complex rhs = frobenius_inner(d, kron(cx.transpose(), z));
        check(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)), "adjoint");
    }

    SystemConfig cfg = default_config();
    cfg.n_r = 4;
    cfg.users[1].k_factor = 3.0;
    cfg.users[2].f_d = 0.25;
    const ScheduleStats st = build_schedule_stats(cfg, build_schedule({2, 3}));
    for (const auto& slot : st.slots)
        for (const SlotStats& s : slot) {
            const CMatrix& c = st.channels[s.user].spatial_cov;
            check(is_hermitian_psd(s.c_hat) && is_hermitian_psd(s.q), "estimator psd");
            check(is_hermitian_psd(c - s.c_hat), "estimator loewner");
        }

    BeamformingMatrix w = BeamformingMatrix::normalized(cmat(2, 3));
    CMatrix rotated = w.matrix();
    for (Eigen::Index k = 0; k < 3; ++k)
        rotated.col(k) *= std::polar(1.0, 0.7 * static_cast<double>(k + 1));
    const double se_a = sse_objective(cfg, st, w).sse;
    const double se_b = sse_objective(cfg, st, BeamformingMatrix(rotated)).sse;
    check(std::abs(se_a - se_b) <= 1e-12 * std::max(1.0, se_a), "phase invariance of SE");

    {
        const SlotStats& s0 = st.slots[0][0];
        const CVector zhat = cmat(s0.q.rows(), 1);
        std::vector<UserSlotContext> ctx, ctx_rot;
        const std::vector<double> alphas = user_alphas(cfg);
        for (int k = 0; k < 3; ++k) {
            ctx.push_back({zhat, &st.slots[0][k], w.column(k), 1.0});
            ctx_rot.push_back({zhat * std::polar(1.0, 1.1), &st.slots[0][k], CVector(rotated.col(k)), 1.0});
        }
        const double g0 = instantaneous_sinr(ctx[0], f_matrix(ctx, alphas, cfg.sigma_d2), alphas[0]);
        const double g1 = instantaneous_sinr(ctx_rot[0], f_matrix(ctx_rot, alphas, cfg.sigma_d2), alphas[0]);
        check(std::abs(g0 - g1) <= 1e-10 * std::max(1.0, g0), "phase invariance of SINR");
    }

    {
        SystemConfig asym = cfg;
        asym.n_t = 3;
        asym.users[0].aod_deg = 35.0;
        asym.users[0].k_factor = 5.0;
        BeamformingOptions opts;
        opts.max_iterations = 10;
        const BeamformingResult r = optimize_beamforming(asym, build_schedule({2}), opts);
        for (std::size_t i = 1; i < r.history.size(); ++i)
            check(r.history[i] >= r.history[i - 1], "ascent monotonicity");
    }

    {
        const auto dir = std::filesystem::temp_directory_path() / "agingmimo_acceptance";
        std::filesystem::remove_all(dir);
        auto read = [](const std::filesystem::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        Experiment ex;
        ex.cfg.n_r = 4;
        ex.cfg.m_max = 2;
        ex.cfg.q_max = 3;
        ex.sweep.axis = SweepAxis::kDoppler;
        ex.sweep.values = {0.05, 0.2};
        ex.sweep.optimize_q = true;
        ex.validate.mc.num_samples = 500;
        std::ostringstream log;
        std::vector<std::string> sweeps, validates;
        for (int threads : {1, 2, 4}) {
            RunOptions o;
            o.timing = false;
            o.threads = threads;
            o.seed = 5;
            o.out = (dir / ("sweep" + std::to_string(threads) + ".csv")).string();
            run_sweep(ex, o, log);
            sweeps.push_back(read(o.out));
            o.out = (dir / ("validate" + std::to_string(threads) + ".csv")).string();
            run_validate(ex, o, log);
            validates.push_back(read(o.out));
        }
        check(!sweeps[0].empty() && sweeps[0] == sweeps[1] && sweeps[0] == sweeps[2], "sweep CSV determinism");
        check(!validates[0].empty() && validates[0] == validates[1] && validates[0] == validates[2],
              "validate CSV determinism");
    }

    std::string detail = failed.empty() ? "all property checks hold" : "failed:";
    for (const std::string& f : failed)
        detail += " " + f;
    return {failed.empty(), detail};
}

} // namespace

int main(int argc, char** argv) {
    const std::map<int, std::pair<std::string, std::function<Verdict()>>> criteria{
        {1, {"concentration of the deterministic equivalent", concentration}},
        {2, {"LMMSE sample covariances", lmmse_empirics}},
        {3, {"SINR ratio-form equivalence", ratio_form}},
        {4, {"fixed-point accuracy and convergence", fixed_point}},
        {5, {"SSE versus transmit antennas", figure_nt}},
        {6, {"optimal frame size versus Doppler", figure_doppler}},
        {7, {"optimal frame size versus Rician factor", figure_rician}},
        {8, {"optimal frame size and gain versus path loss", figure_pathloss}},
        {9, {"property suites", properties}},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (const auto& [id, _] : criteria)
            selected.push_back(id);

    bool all_pass = true;
    for (int id : selected) {
        const auto it = criteria.find(id);
        if (it == criteria.end()) {
            std::printf("criterion %d: unknown\n", id);
            all_pass = false;
            continue;
        }
        Verdict v;
        try {
            v = it->second.second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d [%s]: %s  %s\n", id, it->second.first.c_str(), v.pass ? "PASS" : "FAIL",
                    v.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && v.pass;
    }
    return all_pass ? 0 : 1;
}
