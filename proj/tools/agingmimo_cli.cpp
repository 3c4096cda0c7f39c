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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agingmimo/experiments.hpp"
#include "agingmimo/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitGate = 4;

struct CommonFlags {
    std::string config;
    std::string out;
    std::uint64_t seed = 1;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "JSON configuration file (defaults apply when omitted)");
    cmd->add_option("--out", f.out, "output CSV path")->required();
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--threads", f.threads, "worker count (overrides AGINGMIMO_THREADS)")->check(CLI::PositiveNumber);
}

agingmimo::Experiment load(const CommonFlags& f) {
    return f.config.empty() ? agingmimo::Experiment{} : agingmimo::load_experiment(f.config);
}

agingmimo::RunOptions run_options(const CommonFlags& f, bool timing) {
    agingmimo::RunOptions o;
    o.out = f.out;
    o.seed = f.seed;
    o.threads = agingmimo::resolve_thread_count(f.threads);
    o.timing = timing;
    return o;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic-equivalent spectral efficiency and pilot spacing for aging MIMO uplinks"};
    app.set_version_flag("--version", agingmimo::version());
    app.require_subcommand(1);

    CommonFlags sweep_flags;
    std::optional<std::string> axis;
    std::optional<std::vector<double>> values;
    bool opt_q = false, opt_w = false, no_timing = false;
    auto* sweep = app.add_subcommand("sweep", "SSE along one parameter axis");
    add_common(sweep, sweep_flags);
    sweep->add_option("--axis", axis, "n_t | doppler | rician | pathloss_db | n_r");
    sweep->add_option("--values", values, "axis values, ascending")->delimiter(',');
    sweep->add_flag("--optimize-q", opt_q, "search frame sizes and count per point");
    sweep->add_flag("--optimize-w", opt_w, "optimize beamformers per point");
    sweep->add_flag("--no-timing", no_timing, "write runtime_ms = 0");

    CommonFlags validate_flags;
    std::optional<int> samples;
    std::optional<double> threshold;
    std::optional<std::vector<int>> nr_sweep;
    bool fast_path = false;
    auto* validate = app.add_subcommand("validate", "Monte Carlo check of the deterministic equivalent");
    add_common(validate, validate_flags);
    validate->add_option("--samples", samples, "Monte Carlo draws")->check(CLI::PositiveNumber);
    validate->add_option("--threshold", threshold, "gate on the relative error")->check(CLI::NonNegativeNumber);
    validate->add_option("--nr-sweep", nr_sweep, "extra N_r values to re-run")->delimiter(',');
    validate->add_flag("--fast-path", fast_path, "sample estimates from their covariance");

    CommonFlags optimize_flags;
    bool equal_q = false;
    auto* optimize = app.add_subcommand("optimize", "joint frame and beamformer search");
    add_common(optimize, optimize_flags);
    optimize->add_flag("--equal-q", equal_q, "restrict to equal frame sizes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            agingmimo::Experiment ex = load(sweep_flags);
            if (axis)
                ex.sweep.axis = agingmimo::parse_axis(*axis);
            if (values)
                ex.sweep.values = *values;
            ex.sweep.optimize_q = ex.sweep.optimize_q || opt_q;
            ex.sweep.optimize_w = ex.sweep.optimize_w || opt_w;
            agingmimo::run_sweep(ex, run_options(sweep_flags, !no_timing), std::cout);
        } else if (validate->parsed()) {
            agingmimo::Experiment ex = load(validate_flags);
            if (samples)
                ex.validate.mc.num_samples = *samples;
            if (threshold)
                ex.validate.threshold = *threshold;
            if (nr_sweep)
                ex.validate.mc.nr_sweep = *nr_sweep;
            ex.validate.mc.fast_path = ex.validate.mc.fast_path || fast_path;
            const auto outcome = agingmimo::run_validate(ex, run_options(validate_flags, true), std::cout);
            return outcome.passed ? kExitOk : kExitGate;
        } else if (optimize->parsed()) {
            agingmimo::Experiment ex = load(optimize_flags);
            ex.optimize.equal_q_only = ex.optimize.equal_q_only || equal_q;
            agingmimo::run_optimize(ex, run_options(optimize_flags, true), std::cout);
        }
    } catch (const agingmimo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const agingmimo::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
