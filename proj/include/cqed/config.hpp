#pragma once

// Flat key-value experiment configuration with dotted section names.
// Grammar: one `section.key = value` per line, `#` starts a comment,
// blank lines ignored. Frequencies are linear GHz (Table-style) and are
// converted to angular rad/ns on access. Unknown keys are rejected.

#include "cqed/circuit.hpp"
#include "cqed/units.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cqed {

// Invalid configuration input; maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    struct System {
        double omega_R_GHz = 7.0;
        double omega_T_GHz = 5.0;
        double g_GHz = 0.2;
        int N = 10;
        int qubit_levels = 2;
    } system;

    struct Drive {
        double A_GHz = 0.16;
        std::optional<double> omega_d_GHz;  // defaults to the qubit frequency
        DriveEnvelope envelope = DriveEnvelope::Constant;
        double start_ns = 0.0;
        double stop_ns = 0.0;
        bool enabled_during_sweep = false;
    } drive;

    struct Dissipation {
        // Repo defaults for the dissipative baseline scenario; not values
        // from the parameter table, which lists no rates.
        double kappa_GHz = 0.1;
        double gamma_GHz = 0.05;
        double n_th = 0.0;
    } dissipation;

    struct Grid {
        double t_end_ns = 10.0;
        int points = 256;
        int substeps = 64;
    } grid;

    struct Sweep {
        double delta_min_GHz = -1.0;
        double delta_max_GHz = 1.0;
        int delta_points = 41;
    } sweep;

    struct Output {
        std::string directory = "./out";
        std::string format = "csv";
    } output;

    struct Transmon {
        double EC_GHz = 0.3;
        double EJ_GHz = 15.0;
        int n_cut = 20;
        double ratio_min = 10.0;
        double ratio_max = 200.0;
        int ratio_points = 25;
    } transmon;

    struct Readout {
        double probe_span_GHz = 1.0;  // full sweep width about omega_r
        int probe_points = 401;
    } readout;

    // Keys absent from the input and filled from defaults, for provenance.
    std::vector<std::string> defaulted_keys;
    std::vector<std::string> warnings;

    // Angular-frequency accessors (rad/ns).
    double omega_R() const { return ghz_to_angular(system.omega_R_GHz); }
    double omega_T() const { return ghz_to_angular(system.omega_T_GHz); }
    double g() const { return ghz_to_angular(system.g_GHz); }
    double drive_A() const { return ghz_to_angular(drive.A_GHz); }
    double omega_d() const {
        return ghz_to_angular(drive.omega_d_GHz.value_or(system.omega_T_GHz));
    }
    double kappa() const { return ghz_to_angular(dissipation.kappa_GHz); }
    double gamma() const { return ghz_to_angular(dissipation.gamma_GHz); }
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": expected a number, got '" + v + "'");
    }
}

inline int parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": expected an integer, got '" + v + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: " + key + ": expected a boolean, got '" + v + "'");
}

}  // namespace detail

// Parse and validate a configuration from raw text. All units converted,
// defaults filled (and recorded), unknown keys rejected.
inline ExperimentConfig validate_config(const std::string& raw) {
    std::map<std::string, std::string> kv;
    std::istringstream in(raw);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": empty key or value");
        if (kv.count(key))
            throw ConfigError("config: duplicate key " + key);
        kv[key] = value;
    }

    ExperimentConfig cfg;
    std::vector<std::string> seen;
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        seen.push_back(key);
        if (it == kv.end()) {
            cfg.defaulted_keys.push_back(key);
            return std::nullopt;
        }
        return it->second;
    };
    auto take_double = [&](const std::string& key, double& dst) {
        if (auto v = take(key)) dst = detail::parse_double(key, *v);
    };
    auto take_int = [&](const std::string& key, int& dst) {
        if (auto v = take(key)) dst = detail::parse_int(key, *v);
    };
    auto take_bool = [&](const std::string& key, bool& dst) {
        if (auto v = take(key)) dst = detail::parse_bool(key, *v);
    };
    auto take_string = [&](const std::string& key, std::string& dst) {
        if (auto v = take(key)) dst = *v;
    };

    take_double("system.omega_R_GHz", cfg.system.omega_R_GHz);
    take_double("system.omega_T_GHz", cfg.system.omega_T_GHz);
    take_double("system.g_GHz", cfg.system.g_GHz);
    take_int("system.N", cfg.system.N);
    take_int("system.qubit_levels", cfg.system.qubit_levels);

    take_double("drive.A_GHz", cfg.drive.A_GHz);
    if (auto v = take("drive.omega_d_GHz"))
        cfg.drive.omega_d_GHz = detail::parse_double("drive.omega_d_GHz", *v);
    if (auto v = take("drive.envelope")) {
        if (*v == "constant") cfg.drive.envelope = DriveEnvelope::Constant;
        else if (*v == "rectangular") cfg.drive.envelope = DriveEnvelope::RectangularWindow;
        else throw ConfigError("config: drive.envelope: expected constant|rectangular, got '" +
                               *v + "'");
    }
    take_double("drive.start_ns", cfg.drive.start_ns);
    take_double("drive.stop_ns", cfg.drive.stop_ns);
    take_bool("drive.enabled_during_sweep", cfg.drive.enabled_during_sweep);

    take_double("dissipation.kappa_GHz", cfg.dissipation.kappa_GHz);
    take_double("dissipation.gamma_GHz", cfg.dissipation.gamma_GHz);
    take_double("dissipation.n_th", cfg.dissipation.n_th);

    take_double("grid.t_end_ns", cfg.grid.t_end_ns);
    take_int("grid.points", cfg.grid.points);
    take_int("grid.substeps", cfg.grid.substeps);

    take_double("sweep.delta_min_GHz", cfg.sweep.delta_min_GHz);
    take_double("sweep.delta_max_GHz", cfg.sweep.delta_max_GHz);
    take_int("sweep.delta_points", cfg.sweep.delta_points);

    take_string("output.directory", cfg.output.directory);
    take_string("output.format", cfg.output.format);

    take_double("transmon.EC_GHz", cfg.transmon.EC_GHz);
    take_double("transmon.EJ_GHz", cfg.transmon.EJ_GHz);
    take_int("transmon.n_cut", cfg.transmon.n_cut);
    take_double("transmon.ratio_min", cfg.transmon.ratio_min);
    take_double("transmon.ratio_max", cfg.transmon.ratio_max);
    take_int("transmon.ratio_points", cfg.transmon.ratio_points);

    take_double("readout.probe_span_GHz", cfg.readout.probe_span_GHz);
    take_int("readout.probe_points", cfg.readout.probe_points);

    for (const auto& [key, value] : kv)
        if (std::find(seen.begin(), seen.end(), key) == seen.end())
            throw ConfigError("config: unknown key " + key);

    // Field-path validation.
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError("config: " + msg);
    };
    require(std::isfinite(cfg.system.omega_R_GHz) && cfg.system.omega_R_GHz > 0.0,
            "system.omega_R_GHz must be positive and finite");
    require(std::isfinite(cfg.system.omega_T_GHz) && cfg.system.omega_T_GHz > 0.0,
            "system.omega_T_GHz must be positive and finite");
    require(std::isfinite(cfg.system.g_GHz), "system.g_GHz must be finite");
    require(cfg.system.N >= 2, "system.N must be >= 2");
    require(cfg.system.qubit_levels >= 2, "system.qubit_levels must be >= 2");
    require(cfg.drive.A_GHz >= 0.0, "drive.A_GHz must be >= 0");
    require(cfg.dissipation.kappa_GHz >= 0.0, "dissipation.kappa_GHz must be >= 0");
    require(cfg.dissipation.gamma_GHz >= 0.0, "dissipation.gamma_GHz must be >= 0");
    require(cfg.dissipation.n_th >= 0.0, "dissipation.n_th must be >= 0");
    require(cfg.grid.t_end_ns > 0.0, "grid.t_end_ns must be positive");
    require(cfg.grid.points >= 2, "grid.points must be >= 2");
    require(cfg.grid.substeps >= 1, "grid.substeps must be >= 1");
    require(cfg.sweep.delta_min_GHz <= cfg.sweep.delta_max_GHz,
            "sweep.delta_min_GHz must not exceed sweep.delta_max_GHz");
    require(cfg.sweep.delta_points >= 1, "sweep.delta_points must be >= 1");
    require(cfg.output.format == "csv" || cfg.output.format == "json",
            "output.format must be csv or json");
    require(cfg.transmon.EC_GHz > 0.0, "transmon.EC_GHz must be positive");
    require(cfg.transmon.EJ_GHz > 0.0, "transmon.EJ_GHz must be positive");
    require(cfg.transmon.n_cut >= 5, "transmon.n_cut must be >= 5");
    require(cfg.transmon.ratio_min > 0.0 && cfg.transmon.ratio_max >= cfg.transmon.ratio_min,
            "transmon.ratio_min/ratio_max must be positive and ordered");
    require(cfg.transmon.ratio_points >= 2, "transmon.ratio_points must be >= 2");
    require(cfg.readout.probe_span_GHz > 0.0, "readout.probe_span_GHz must be positive");
    require(cfg.readout.probe_points >= 3, "readout.probe_points must be >= 3");

    return cfg;
}

}  // namespace cqed
