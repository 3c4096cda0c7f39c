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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agingmimo/mcoracle.hpp"
#include "agingmimo/optimizer.hpp"

namespace agingmimo {

const char* version();

enum class SweepAxis { kNt, kDoppler, kRician, kPathlossDb, kNr };

SweepAxis parse_axis(const std::string& name); // ConfigError on unknown names
std::string axis_name(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::kDoppler;
    std::vector<double> values;
    bool optimize_w = false;
    bool optimize_q = false;
    std::optional<McConfig> mc_check;
};

struct ValidateSpec {
    McConfig mc;
    double threshold = 0.05; // gate passes iff every relative error is strictly below
    bool optimize_w = false;
};

struct OptimizeSpec {
    bool equal_q_only = false;
    bool optimize_w = true;
};

/// Everything a config file may carry besides the system parameters.
struct Experiment {
    SystemConfig cfg = default_config();
    SweepSpec sweep;
    ValidateSpec validate;
    OptimizeSpec optimize;
    FixedPointOptions fixed_point;
    std::vector<int> schedule; // empty: m_max frames of q_max data slots
};

Experiment parse_experiment(const std::string& json_text);
Experiment load_experiment(const std::string& path);

/// Throws ConfigError("sweep.values", ...) when values are empty or unsorted.
void validate_sweep(const SweepSpec& spec);

/// Copy of cfg with the axis value applied (every user for per-user axes).
SystemConfig apply_axis(const SystemConfig& cfg, SweepAxis axis, double value);

std::vector<int> resolve_schedule(const Experiment& ex);

/// Raised when the solver fails at one sweep point.
class AxisFailure : public NumericalError {
public:
    AxisFailure(std::string axis, double value, const std::string& cause);
    const std::string& axis() const noexcept { return axis_; }
    double value() const noexcept { return value_; }

private:
    std::string axis_;
    double value_;
};

struct RunOptions {
    std::string out;
    std::uint64_t seed = 1;
    int threads = 1;
    bool timing = true; // false writes runtime_ms = 0 so output is byte-stable
};

struct SweepRow {
    double value = 0.0;
    double sse = 0.0;
    std::vector<int> q;
    int fp_iterations = 0;
    double fp_residual = 0.0;
    long long runtime_ms = 0;
    double mc_max_rel_err = -1.0; // negative when no MC check ran
};

/// One SSE evaluation per axis value; writes the sweep CSV when opts.out is set.
std::vector<SweepRow> run_sweep(const Experiment& ex, const RunOptions& opts, std::ostream& log);

struct ValidateOutcome {
    McReport report;
    bool passed = false;
};

ValidateOutcome run_validate(const Experiment& ex, const RunOptions& opts, std::ostream& log);

OptimizationResult run_optimize(const Experiment& ex, const RunOptions& opts, std::ostream& log);

/// "# agingmimo <version> config_hash=<hex> seed=<n>"
std::string provenance_line(const SystemConfig& cfg, std::uint64_t seed);

} // namespace agingmimo
