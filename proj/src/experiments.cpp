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

#include "agingmimo/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#ifndef AGINGMIMO_VERSION
#define AGINGMIMO_VERSION "0.0.0"
#endif

namespace agingmimo {

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join_q(const std::vector<int>& q) {
    std::string out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i)
            out += ';';
        out += std::to_string(q[i]);
    }
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

std::string sibling(const std::string& out, const std::string& suffix) {
    std::filesystem::path p(out);
    const std::string stem = p.stem().string();
    return (p.parent_path() / (stem + suffix)).string();
}

void check_keys(const json& j, const std::string& section, const std::set<std::string>& allowed) {
    if (!j.is_object())
        throw ConfigError(section, "expected an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw ConfigError(section + "." + key, "unknown key");
}

template <typename T>
void read(const json& j, const std::string& section, const std::string& key, T& out) {
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(section + "." + key, "wrong type");
    }
}

McConfig parse_mc(const json& j, const std::string& section, McConfig mc) {
    check_keys(j, section, {"num_samples", "seed", "nr_sweep", "fast_path", "threshold", "optimize_w"});
    read(j, section, "num_samples", mc.num_samples);
    read(j, section, "seed", mc.seed);
    read(j, section, "nr_sweep", mc.nr_sweep);
    read(j, section, "fast_path", mc.fast_path);
    if (mc.num_samples < 1)
        throw ConfigError(section + ".num_samples", "must be >= 1");
    for (int n : mc.nr_sweep)
        if (n < 1)
            throw ConfigError(section + ".nr_sweep", "entries must be >= 1");
    return mc;
}

BeamformingMatrix fixed_beamformers(const SystemConfig& cfg) { return BeamformingMatrix::uniform(cfg.n_t, cfg.num_users()); }

struct Evaluated {
    std::vector<int> q;
    BeamformingMatrix w;
    SseValue value;
};

Evaluated evaluate_point(const Experiment& ex, bool optimize_q, bool optimize_w, const RunOptions& opts) {
    const SystemConfig& cfg = ex.cfg;
    FrameSearchOptions search;
    search.threads = opts.threads;
    search.beamforming.seed = opts.seed;
    search.beamforming.fixed_point = ex.fixed_point;
    search.equal_q_only = ex.optimize.equal_q_only;

    std::vector<int> q;
    BeamformingMatrix w = fixed_beamformers(cfg);
    if (optimize_q) {
        const OptimizationResult r = optimize_w ? joint_optimize(cfg, search) : optimize_frames(cfg, w, search);
        q = r.best_q;
        w = r.best_w;
    } else {
        q = resolve_schedule(ex);
        if (optimize_w)
            w = optimize_beamforming(cfg, build_schedule(q), search.beamforming).w;
    }
    const SseValue v = sse_objective(cfg, build_schedule(q), w, ex.fixed_point);
    return {std::move(q), std::move(w), v};
}

} // namespace

const char* version() { return AGINGMIMO_VERSION; }

SweepAxis parse_axis(const std::string& name) {
    if (name == "n_t")
        return SweepAxis::kNt;
    if (name == "doppler")
        return SweepAxis::kDoppler;
    if (name == "rician")
        return SweepAxis::kRician;
    if (name == "pathloss_db")
        return SweepAxis::kPathlossDb;
    if (name == "n_r")
        return SweepAxis::kNr;
    throw ConfigError("sweep.axis", "expected one of n_t, doppler, rician, pathloss_db, n_r");
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::kNt: return "n_t";
    case SweepAxis::kDoppler: return "doppler";
    case SweepAxis::kRician: return "rician";
    case SweepAxis::kPathlossDb: return "pathloss_db";
    case SweepAxis::kNr: return "n_r";
    }
    return "?";
}

Experiment parse_experiment(const std::string& json_text) {
    Experiment ex;
    ex.cfg = parse_config(json_text);
    const json j = json::parse(json_text);

    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        check_keys(s, "sweep", {"axis", "values", "optimize_w", "optimize_q", "mc_check"});
        if (s.contains("axis")) {
            std::string name;
            read(s, "sweep", "axis", name);
            ex.sweep.axis = parse_axis(name);
        }
        read(s, "sweep", "values", ex.sweep.values);
        read(s, "sweep", "optimize_w", ex.sweep.optimize_w);
        read(s, "sweep", "optimize_q", ex.sweep.optimize_q);
        if (s.contains("mc_check"))
            ex.sweep.mc_check = parse_mc(s.at("mc_check"), "sweep.mc_check", McConfig{});
    }
    if (j.contains("validate")) {
        const json& v = j.at("validate");
        ex.validate.mc = parse_mc(v, "validate", ex.validate.mc);
        read(v, "validate", "threshold", ex.validate.threshold);
        read(v, "validate", "optimize_w", ex.validate.optimize_w);
        if (!(ex.validate.threshold >= 0.0))
            throw ConfigError("validate.threshold", "must be >= 0");
    }
    if (j.contains("optimize")) {
        const json& o = j.at("optimize");
        check_keys(o, "optimize", {"equal_q_only", "optimize_w"});
        read(o, "optimize", "equal_q_only", ex.optimize.equal_q_only);
        read(o, "optimize", "optimize_w", ex.optimize.optimize_w);
    }
    if (j.contains("fixed_point")) {
        const json& f = j.at("fixed_point");
        check_keys(f, "fixed_point", {"damping", "tolerance", "max_iterations"});
        read(f, "fixed_point", "damping", ex.fixed_point.damping);
        read(f, "fixed_point", "tolerance", ex.fixed_point.tolerance);
        read(f, "fixed_point", "max_iterations", ex.fixed_point.max_iterations);
        if (!(ex.fixed_point.damping > 0.0 && ex.fixed_point.damping <= 1.0))
            throw ConfigError("fixed_point.damping", "must lie in (0, 1]");
        if (!(ex.fixed_point.tolerance > 0.0))
            throw ConfigError("fixed_point.tolerance", "must be positive");
        if (ex.fixed_point.max_iterations < 1)
            throw ConfigError("fixed_point.max_iterations", "must be >= 1");
    }
    if (j.contains("schedule")) {
        read(j, "", "schedule", ex.schedule);
        if (ex.schedule.empty())
            throw ConfigError("schedule", "must list at least one frame");
        for (int q : ex.schedule)
            if (q < 1 || q > ex.cfg.q_max)
                throw ConfigError("schedule", "frame sizes must lie in [1, q_max]");
    }
    return ex;
}

Experiment load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("<file>", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment(ss.str());
}

void validate_sweep(const SweepSpec& spec) {
    if (spec.values.empty())
        throw ConfigError("sweep.values", "must not be empty");
    if (!std::is_sorted(spec.values.begin(), spec.values.end()))
        throw ConfigError("sweep.values", "must be sorted ascending");
    for (double v : spec.values)
        if (!std::isfinite(v))
            throw ConfigError("sweep.values", "must be finite");
}

SystemConfig apply_axis(const SystemConfig& cfg, SweepAxis axis, double value) {
    SystemConfig out = cfg;
    switch (axis) {
    case SweepAxis::kNt:
        out.n_t = static_cast<int>(std::lround(value));
        break;
    case SweepAxis::kNr:
        out.n_r = static_cast<int>(std::lround(value));
        break;
    case SweepAxis::kDoppler:
        for (auto& u : out.users)
            u.f_d = value;
        break;
    case SweepAxis::kRician:
        for (auto& u : out.users)
            u.k_factor = value;
        break;
    case SweepAxis::kPathlossDb:
        for (auto& u : out.users)
            u.alpha = std::pow(10.0, value / 20.0);
        break;
    }
    validate(out);
    return out;
}

std::vector<int> resolve_schedule(const Experiment& ex) {
    if (!ex.schedule.empty())
        return ex.schedule;
    return std::vector<int>(static_cast<std::size_t>(ex.cfg.m_max), ex.cfg.q_max);
}

AxisFailure::AxisFailure(std::string axis, double value, const std::string& cause)
    : NumericalError("solver failed at " + axis + "=" + fmt(value) + ": " + cause), axis_(std::move(axis)),
      value_(value) {}

std::string provenance_line(const SystemConfig& cfg, std::uint64_t seed) {
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    return std::string("# agingmimo ") + version() + " config_hash=" + hash + " seed=" + std::to_string(seed);
}

std::vector<SweepRow> run_sweep(const Experiment& ex, const RunOptions& opts, std::ostream& log) {
    validate_sweep(ex.sweep);
    const std::string axis = axis_name(ex.sweep.axis);

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < ex.sweep.values.size(); ++i) {
        const double value = ex.sweep.values[i];
        SystemConfig cfg;
        try {
            cfg = apply_axis(ex.cfg, ex.sweep.axis, value);
        } catch (const ConfigError& e) {
            throw ConfigError("sweep.values[" + std::to_string(i) + "]", e.what());
        }

        const auto start = std::chrono::steady_clock::now();
        SweepRow row;
        row.value = value;
        try {
            Experiment local = ex;
            local.cfg = cfg;
            const Evaluated r = evaluate_point(local, ex.sweep.optimize_q, ex.sweep.optimize_w, opts);
            row.sse = r.value.sse;
            row.q = r.q;
            row.fp_iterations = r.value.max_iterations;
            row.fp_residual = r.value.max_residual;
            if (ex.sweep.mc_check) {
                McConfig mc = *ex.sweep.mc_check;
                mc.threads = opts.threads;
                row.mc_max_rel_err = validate_deterministic(cfg, build_schedule(r.q), r.w, mc).max_relative_error();
            }
        } catch (const NumericalError& e) {
            throw AxisFailure(axis, value, e.what());
        }
        const auto elapsed = std::chrono::steady_clock::now() - start;
        row.runtime_ms =
            opts.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() : 0;

        log << axis << '=' << fmt(value) << " sse=" << fmt(row.sse) << " q=" << join_q(row.q)
            << " M=" << row.q.size() << " fp_iters=" << row.fp_iterations;
        if (row.mc_max_rel_err >= 0.0)
            log << " mc_rel_err=" << fmt(row.mc_max_rel_err);
        log << '\n';
        rows.push_back(std::move(row));
    }

    if (!opts.out.empty()) {
        std::string text = provenance_line(ex.cfg, opts.seed) + "\naxis,value,sse_bits,opt_q,opt_M,fp_iters,runtime_ms\n";
        for (const SweepRow& r : rows)
            text += axis + ',' + fmt(r.value) + ',' + fmt(r.sse) + ',' + join_q(r.q) + ',' +
                    std::to_string(r.q.size()) + ',' + std::to_string(r.fp_iterations) + ',' +
                    std::to_string(r.runtime_ms) + '\n';
        write_file(opts.out, text);
    }
    return rows;
}

ValidateOutcome run_validate(const Experiment& ex, const RunOptions& opts, std::ostream& log) {
    const std::vector<int> q = resolve_schedule(ex);
    const FrameSchedule schedule = build_schedule(q);
    McConfig mc = ex.validate.mc;
    mc.seed = opts.seed;
    mc.threads = opts.threads;

    BeamformingMatrix w = fixed_beamformers(ex.cfg);
    if (ex.validate.optimize_w) {
        BeamformingOptions bf;
        bf.seed = opts.seed;
        bf.fixed_point = ex.fixed_point;
        w = optimize_beamforming(ex.cfg, schedule, bf).w;
    }

    ValidateOutcome outcome;
    outcome.report = validate_deterministic(ex.cfg, schedule, w, mc);
    const McReport& rep = outcome.report;
    outcome.passed = true;
    for (double e : rep.relative_error)
        if (!(e < ex.validate.threshold))
            outcome.passed = false;

    for (std::size_t k = 0; k < rep.relative_error.size(); ++k)
        log << "user " << k << " se_emp=" << fmt(rep.empirical_mean_se[k]) << " se_det=" << fmt(rep.deterministic_se[k])
            << " rel_err=" << fmt(rep.relative_error[k]) << '\n';
    for (const auto& [n_r, err] : rep.nr_sweep)
        log << "n_r=" << n_r << " max_rel_err=" << fmt(err) << '\n';
    log << (outcome.passed ? "PASS" : "FAIL") << " threshold=" << fmt(ex.validate.threshold) << '\n';

    if (!opts.out.empty()) {
        const std::string prov = provenance_line(ex.cfg, opts.seed) + '\n';
        std::string text = prov + "user,se_emp,se_det,rel_err,n_samples,seed\n";
        for (std::size_t k = 0; k < rep.relative_error.size(); ++k)
            text += std::to_string(k) + ',' + fmt(rep.empirical_mean_se[k]) + ',' + fmt(rep.deterministic_se[k]) + ',' +
                    fmt(rep.relative_error[k]) + ',' + std::to_string(rep.num_samples) + ',' +
                    std::to_string(opts.seed) + '\n';
        write_file(opts.out, text);
        if (!rep.nr_sweep.empty()) {
            std::string sweep = prov + "n_r,max_rel_err\n";
            for (const auto& [n_r, err] : rep.nr_sweep)
                sweep += std::to_string(n_r) + ',' + fmt(err) + '\n';
            write_file(sibling(opts.out, ".nr_sweep.csv"), sweep);
        }
    }
    return outcome;
}

OptimizationResult run_optimize(const Experiment& ex, const RunOptions& opts, std::ostream& log) {
    FrameSearchOptions search;
    search.threads = opts.threads;
    search.equal_q_only = ex.optimize.equal_q_only;
    search.beamforming.seed = opts.seed;
    search.beamforming.fixed_point = ex.fixed_point;
    const OptimizationResult r = ex.optimize.optimize_w
                                     ? joint_optimize(ex.cfg, search)
                                     : optimize_frames(ex.cfg, fixed_beamformers(ex.cfg), search);

    log << "best sse=" << fmt(r.best_sse) << " M=" << r.best_m << " q=" << join_q(r.best_q)
        << " candidates=" << r.trace.size() << '\n';

    if (!opts.out.empty()) {
        const std::string prov = provenance_line(ex.cfg, opts.seed) + '\n';
        write_file(opts.out, prov + "sse_bits,opt_M,opt_q,fp_iters\n" + fmt(r.best_sse) + ',' +
                                 std::to_string(r.best_m) + ',' + join_q(r.best_q) + ',' +
                                 std::to_string(r.fp_iterations) + '\n');

        std::string wtext = prov + "user,antenna,re,im\n";
        const CMatrix& w = r.best_w.matrix();
        for (Eigen::Index k = 0; k < w.cols(); ++k)
            for (Eigen::Index a = 0; a < w.rows(); ++a)
                wtext += std::to_string(k) + ',' + std::to_string(a) + ',' + fmt(w(a, k).real()) + ',' +
                         fmt(w(a, k).imag()) + '\n';
        write_file(sibling(opts.out, ".w.csv"), wtext);

        std::string trace = prov + "M,q,sse_bits,fp_iters\n";
        for (const FrameCandidate& c : r.trace)
            trace += std::to_string(c.q.size()) + ',' + join_q(c.q) + ',' + fmt(c.sse) + ',' +
                     std::to_string(c.fp_iterations) + '\n';
        write_file(sibling(opts.out, ".trace.csv"), trace);
    }
    return r;
}

} // namespace agingmimo
