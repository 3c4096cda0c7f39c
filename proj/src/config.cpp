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

#include "agingmimo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "agingmimo/errors.hpp"

namespace agingmimo {

using nlohmann::json;

namespace {

// Sections consumed by the experiment layer rather than the system model.
const std::set<std::string> kTopLevelKeys = {
    "n_t",         "n_r",          "tau_p",         "sigma_d2", "q_max",     "m_max", "rho_t",
    "rho_r",       "log_base",     "f_c",           "temporal_law", "pilot_window", "normalization",
    "num_users",   "user",         "users",         "sweep",    "validate",  "schedule", "optimize", "fixed_point",
};

const std::set<std::string> kUserKeys = {"f_d",      "k_factor", "alpha",   "pathloss_db", "p_pilot_max",
                                         "p_data",   "sigma_p2", "sigma_h2", "aoa_deg",    "aod_deg"};

template <typename T>
void read(const json& j, const std::string& key, const std::string& path, T& out) {
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + key, "wrong type");
    }
}

void read_int(const json& j, const std::string& key, const std::string& path, int& out) {
    if (!j.contains(key))
        return;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw ConfigError(path + key, "expected an integer");
    out = v.get<int>();
}

UserParams read_user(const json& j, UserParams user, const std::string& path) {
    if (!j.is_object())
        throw ConfigError(path.substr(0, path.size() - 1), "expected an object");
    for (const auto& [key, _] : j.items())
        if (!kUserKeys.count(key))
            throw ConfigError(path + key, "unknown key");
    read(j, "f_d", path, user.f_d);
    read(j, "k_factor", path, user.k_factor);
    read(j, "alpha", path, user.alpha);
    if (j.contains("pathloss_db")) {
        if (j.contains("alpha"))
            throw ConfigError(path + "pathloss_db", "give either alpha or pathloss_db, not both");
        double pl_db = 0.0;
        read(j, "pathloss_db", path, pl_db);
        user.alpha = std::pow(10.0, pl_db / 20.0);
    }
    read(j, "p_pilot_max", path, user.p_pilot_max);
    read(j, "p_data", path, user.p_data);
    read(j, "sigma_p2", path, user.sigma_p2);
    read(j, "sigma_h2", path, user.sigma_h2);
    read(j, "aoa_deg", path, user.aoa_deg);
    read(j, "aod_deg", path, user.aod_deg);
    return user;
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok)
        throw ConfigError(key, what);
}

} // namespace

SystemConfig default_config() {
    return SystemConfig{};
}

void validate(const SystemConfig& cfg) {
    require(cfg.n_t >= 1, "n_t", "must be >= 1");
    require(cfg.n_r >= 1, "n_r", "must be >= 1");
    require(cfg.tau_p >= 1, "tau_p", "must be >= 1");
    require(cfg.q_max >= 1, "q_max", "must be >= 1");
    require(cfg.m_max >= 1, "m_max", "must be >= 1");
    require(cfg.pilot_window >= 1, "pilot_window", "must be >= 1");
    require(cfg.sigma_d2 > 0.0, "sigma_d2", "must be > 0");
    require(cfg.rho_t >= 0.0 && cfg.rho_t <= 1.0, "rho_t", "must lie in [0, 1]");
    require(cfg.rho_r >= 0.0 && cfg.rho_r <= 1.0, "rho_r", "must lie in [0, 1]");
    require(!cfg.users.empty(), "users", "at least one user is required");
    for (std::size_t k = 0; k < cfg.users.size(); ++k) {
        const UserParams& u = cfg.users[k];
        const std::string p = "users[" + std::to_string(k) + "].";
        require(u.f_d >= 0.0, p + "f_d", "must be >= 0");
        require(u.k_factor >= 0.0, p + "k_factor", "must be >= 0");
        require(u.alpha > 0.0, p + "alpha", "must be > 0");
        require(u.p_pilot_max > 0.0, p + "p_pilot_max", "must be > 0");
        require(u.p_data > 0.0, p + "p_data", "must be > 0");
        require(u.sigma_p2 > 0.0, p + "sigma_p2", "must be > 0");
        require(u.sigma_h2 > 0.0, p + "sigma_h2", "must be > 0");
        require(std::isfinite(u.aoa_deg), p + "aoa_deg", "must be finite");
        require(std::isfinite(u.aod_deg), p + "aod_deg", "must be finite");
    }
}

SystemConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("<document>", "top level must be an object");
    for (const auto& [key, _] : j.items())
        if (!kTopLevelKeys.count(key))
            throw ConfigError(key, "unknown key");

    SystemConfig cfg;
    read_int(j, "n_t", "", cfg.n_t);
    read_int(j, "n_r", "", cfg.n_r);
    read_int(j, "tau_p", "", cfg.tau_p);
    read(j, "sigma_d2", "", cfg.sigma_d2);
    read_int(j, "q_max", "", cfg.q_max);
    read_int(j, "m_max", "", cfg.m_max);
    read(j, "rho_t", "", cfg.rho_t);
    read(j, "rho_r", "", cfg.rho_r);
    read(j, "f_c", "", cfg.f_c);
    read_int(j, "pilot_window", "", cfg.pilot_window);

    if (j.contains("log_base")) {
        const json& v = j.at("log_base");
        if (v == "2" || v == 2)
            cfg.log_base = LogBase::kTwo;
        else if (v == "e")
            cfg.log_base = LogBase::kE;
        else
            throw ConfigError("log_base", "expected 2 or \"e\"");
    }
    if (j.contains("temporal_law")) {
        const json& v = j.at("temporal_law");
        if (v == "exponential")
            cfg.temporal_law = TemporalLaw::kExponential;
        else if (v == "jakes")
            cfg.temporal_law = TemporalLaw::kJakes;
        else
            throw ConfigError("temporal_law", "expected \"exponential\" or \"jakes\"");
    }
    if (j.contains("normalization")) {
        const json& v = j.at("normalization");
        if (v == "all_slots")
            cfg.normalization = SseNormalization::kAllSlots;
        else if (v == "data_slots")
            cfg.normalization = SseNormalization::kDataSlots;
        else
            throw ConfigError("normalization", "expected \"all_slots\" or \"data_slots\"");
    }

    UserParams base;
    if (j.contains("user"))
        base = read_user(j.at("user"), base, "user.");

    if (j.contains("users")) {
        const json& arr = j.at("users");
        if (!arr.is_array())
            throw ConfigError("users", "expected an array");
        cfg.users.clear();
        for (std::size_t k = 0; k < arr.size(); ++k)
            cfg.users.push_back(read_user(arr[k], base, "users[" + std::to_string(k) + "]."));
        if (j.contains("num_users") && j.at("num_users") != static_cast<int>(cfg.users.size()))
            throw ConfigError("num_users", "does not match the length of users");
    } else {
        int k = cfg.num_users();
        read_int(j, "num_users", "", k);
        if (k < 1)
            throw ConfigError("num_users", "must be >= 1");
        cfg.users.assign(static_cast<std::size_t>(k), base);
    }

    validate(cfg);
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("<file>", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_json(const SystemConfig& cfg) {
    json j;
    j["n_t"] = cfg.n_t;
    j["n_r"] = cfg.n_r;
    j["tau_p"] = cfg.tau_p;
    j["sigma_d2"] = cfg.sigma_d2;
    j["q_max"] = cfg.q_max;
    j["m_max"] = cfg.m_max;
    j["rho_t"] = cfg.rho_t;
    j["rho_r"] = cfg.rho_r;
    j["log_base"] = cfg.log_base == LogBase::kTwo ? "2" : "e";
    j["f_c"] = cfg.f_c;
    j["temporal_law"] = cfg.temporal_law == TemporalLaw::kJakes ? "jakes" : "exponential";
    j["pilot_window"] = cfg.pilot_window;
    j["normalization"] = cfg.normalization == SseNormalization::kAllSlots ? "all_slots" : "data_slots";
    json users = json::array();
    for (const UserParams& u : cfg.users) {
        users.push_back({{"f_d", u.f_d},
                         {"k_factor", u.k_factor},
                         {"alpha", u.alpha},
                         {"p_pilot_max", u.p_pilot_max},
                         {"p_data", u.p_data},
                         {"sigma_p2", u.sigma_p2},
                         {"sigma_h2", u.sigma_h2},
                         {"aoa_deg", u.aoa_deg},
                         {"aod_deg", u.aod_deg}});
    }
    j["users"] = users;
    return j.dump();
}

std::uint64_t config_hash(const SystemConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double log_in_base(double x, LogBase base) {
    return base == LogBase::kTwo ? std::log2(x) : std::log(x);
}

} // namespace agingmimo
