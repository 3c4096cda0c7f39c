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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agingmimo/experiments.hpp"

namespace py = pybind11;
using namespace agingmimo;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Deterministic-equivalent spectral efficiency for aging MIMO uplinks";
    m.attr("__version__") = version();

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<TemporalLaw>(m, "TemporalLaw")
        .value("exponential", TemporalLaw::kExponential)
        .value("jakes", TemporalLaw::kJakes);
    py::enum_<LogBase>(m, "LogBase").value("two", LogBase::kTwo).value("e", LogBase::kE);
    py::enum_<SseNormalization>(m, "SseNormalization")
        .value("all_slots", SseNormalization::kAllSlots)
        .value("data_slots", SseNormalization::kDataSlots);

    py::class_<UserParams>(m, "UserParams")
        .def(py::init<>())
        .def_readwrite("f_d", &UserParams::f_d)
        .def_readwrite("k_factor", &UserParams::k_factor)
        .def_readwrite("alpha", &UserParams::alpha)
        .def_readwrite("p_pilot_max", &UserParams::p_pilot_max)
        .def_readwrite("p_data", &UserParams::p_data)
        .def_readwrite("sigma_p2", &UserParams::sigma_p2)
        .def_readwrite("sigma_h2", &UserParams::sigma_h2)
        .def_readwrite("aoa_deg", &UserParams::aoa_deg)
        .def_readwrite("aod_deg", &UserParams::aod_deg);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("n_t", &SystemConfig::n_t)
        .def_readwrite("n_r", &SystemConfig::n_r)
        .def_readwrite("tau_p", &SystemConfig::tau_p)
        .def_readwrite("sigma_d2", &SystemConfig::sigma_d2)
        .def_readwrite("q_max", &SystemConfig::q_max)
        .def_readwrite("m_max", &SystemConfig::m_max)
        .def_readwrite("rho_t", &SystemConfig::rho_t)
        .def_readwrite("rho_r", &SystemConfig::rho_r)
        .def_readwrite("log_base", &SystemConfig::log_base)
        .def_readwrite("temporal_law", &SystemConfig::temporal_law)
        .def_readwrite("pilot_window", &SystemConfig::pilot_window)
        .def_readwrite("normalization", &SystemConfig::normalization)
        .def_readwrite("users", &SystemConfig::users)
        .def("validate", [](const SystemConfig& c) { validate(c); })
        .def("to_json", [](const SystemConfig& c) { return to_json(c); })
        .def("hash", [](const SystemConfig& c) { return config_hash(c); });

    m.def("default_config", &default_config);
    m.def("parse_config", &parse_config, py::arg("json_text"));
    m.def("load_config", &load_config, py::arg("path"));

    m.def("commutation_matrix", &commutation_matrix, py::arg("n_r"), py::arg("n_t"));
    m.def("psd_sqrt", &psd_sqrt, py::arg("a"));
    m.def("temporal_correlation", py::overload_cast<TemporalLaw, double, Time>(&temporal_correlation),
          py::arg("law"), py::arg("f_d"), py::arg("dt"));

    py::class_<FrameSchedule>(m, "FrameSchedule")
        .def(py::init<std::vector<int>>(), py::arg("q"))
        .def_property_readonly("q", &FrameSchedule::q)
        .def_property_readonly("pilot_times", &FrameSchedule::pilot_times)
        .def_property_readonly("data_slot_times",
                               [](const FrameSchedule& s) {
                                   std::vector<Time> t;
                                   for (const DataSlot& d : s.data_slots())
                                       t.push_back(d.time);
                                   return t;
                               })
        .def_property_readonly("total_slot_count", &FrameSchedule::total_slot_count);

    py::class_<BeamformingMatrix>(m, "BeamformingMatrix")
        .def(py::init([](const CMatrix& w) { return BeamformingMatrix::normalized(w); }), py::arg("w"))
        .def_static("uniform", &BeamformingMatrix::uniform, py::arg("n_t"), py::arg("num_users"))
        .def_property_readonly("matrix", &BeamformingMatrix::matrix);

    m.def(
        "sse_objective",
        [](const SystemConfig& cfg, const std::vector<int>& q, const BeamformingMatrix& w) {
            return sse_objective(cfg, build_schedule(q), w).sse;
        },
        py::arg("cfg"), py::arg("q"), py::arg("w"));

    py::class_<FrameCandidate>(m, "FrameCandidate")
        .def_readonly("q", &FrameCandidate::q)
        .def_readonly("sse", &FrameCandidate::sse);
    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_readonly("best_q", &OptimizationResult::best_q)
        .def_readonly("best_m", &OptimizationResult::best_m)
        .def_readonly("best_sse", &OptimizationResult::best_sse)
        .def_property_readonly("best_w", [](const OptimizationResult& r) { return r.best_w.matrix(); })
        .def_readonly("trace", &OptimizationResult::trace);

    m.def(
        "joint_optimize",
        [](const SystemConfig& cfg, bool equal_q_only, int threads, std::uint64_t seed) {
            FrameSearchOptions opts;
            opts.equal_q_only = equal_q_only;
            opts.threads = threads;
            opts.beamforming.seed = seed;
            py::gil_scoped_release release;
            return joint_optimize(cfg, opts);
        },
        py::arg("cfg"), py::arg("equal_q_only") = false, py::arg("threads") = 1, py::arg("seed") = 1);

    py::class_<McReport>(m, "McReport")
        .def_readonly("empirical_mean_se", &McReport::empirical_mean_se)
        .def_readonly("deterministic_se", &McReport::deterministic_se)
        .def_readonly("relative_error", &McReport::relative_error)
        .def_readonly("empirical_estimate_cov_error", &McReport::empirical_estimate_cov_error)
        .def_readonly("jensen_holds", &McReport::jensen_holds)
        .def_readonly("nr_sweep", &McReport::nr_sweep);

    m.def(
        "validate_deterministic",
        [](const SystemConfig& cfg, const std::vector<int>& q, const BeamformingMatrix& w, int num_samples,
           std::uint64_t seed, bool fast_path, int threads) {
            McConfig mc;
            mc.num_samples = num_samples;
            mc.seed = seed;
            mc.fast_path = fast_path;
            mc.threads = threads;
            py::gil_scoped_release release;
            return validate_deterministic(cfg, build_schedule(q), w, mc);
        },
        py::arg("cfg"), py::arg("q"), py::arg("w"), py::arg("num_samples") = 10000, py::arg("seed") = 1,
        py::arg("fast_path") = false, py::arg("threads") = 1);
}
