#pragma once

// Config-driven reproductions of the baseline, chevron, readout, and
// transmon-spectrum experiments, emitting CSV/JSON plot data. CSV output
// is UTF-8, '.' decimal separator, 17 significant digits, byte-identical
// across runs and worker counts.

#include "cqed/circuit.hpp"
#include "cqed/config.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/jc.hpp"
#include "cqed/readout.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

namespace cqed {

struct SweepGrid {
    std::vector<double> delta_values;  // rad/ns
    std::vector<double> times;         // ns
    std::vector<std::vector<double>> p_excited;  // [delta][time]
    std::vector<double> dominant_frequency_GHz;  // per delta
};

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + (dir / name).string());
    return out;
}

// Tabular emission shared by all experiments: CSV (default) or JSON
// columns keyed by header name. `stem` gets the format's extension.
inline void write_table(const std::filesystem::path& dir, const std::string& stem,
                        const std::string& format, const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& rows) {
    if (format == "json") {
        nlohmann::json j;
        for (size_t c = 0; c < header.size(); ++c) {
            nlohmann::json col = nlohmann::json::array();
            for (const auto& row : rows) col.push_back(row[c]);
            j[header[c]] = std::move(col);
        }
        auto out = open_output(dir, stem + ".json");
        out << j.dump(2) << '\n';
        return;
    }
    auto out = open_output(dir, stem + ".csv");
    for (size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 == header.size() ? '\n' : ',');
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c)
            out << fmt(row[c]) << (c + 1 == row.size() ? '\n' : ',');
    }
}

inline nlohmann::json resolved_config_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["system"] = {{"omega_R_GHz", c.system.omega_R_GHz},
                   {"omega_T_GHz", c.system.omega_T_GHz},
                   {"g_GHz", c.system.g_GHz},
                   {"N", c.system.N},
                   {"qubit_levels", c.system.qubit_levels}};
    j["drive"] = {{"A_GHz", c.drive.A_GHz},
                  {"omega_d_GHz", c.drive.omega_d_GHz.value_or(c.system.omega_T_GHz)},
                  {"envelope",
                   c.drive.envelope == DriveEnvelope::Constant ? "constant" : "rectangular"},
                  {"start_ns", c.drive.start_ns},
                  {"stop_ns", c.drive.stop_ns},
                  {"enabled_during_sweep", c.drive.enabled_during_sweep}};
    j["dissipation"] = {{"kappa_GHz", c.dissipation.kappa_GHz},
                        {"gamma_GHz", c.dissipation.gamma_GHz},
                        {"n_th", c.dissipation.n_th}};
    j["grid"] = {{"t_end_ns", c.grid.t_end_ns},
                 {"points", c.grid.points},
                 {"substeps", c.grid.substeps}};
    j["sweep"] = {{"delta_min_GHz", c.sweep.delta_min_GHz},
                  {"delta_max_GHz", c.sweep.delta_max_GHz},
                  {"delta_points", c.sweep.delta_points}};
    j["output"] = {{"directory", c.output.directory}, {"format", c.output.format}};
    j["transmon"] = {{"EC_GHz", c.transmon.EC_GHz},
                     {"EJ_GHz", c.transmon.EJ_GHz},
                     {"n_cut", c.transmon.n_cut},
                     {"ratio_min", c.transmon.ratio_min},
                     {"ratio_max", c.transmon.ratio_max},
                     {"ratio_points", c.transmon.ratio_points}};
    j["readout"] = {{"probe_span_GHz", c.readout.probe_span_GHz},
                    {"probe_points", c.readout.probe_points}};
    j["defaulted_keys"] = c.defaulted_keys;
    return j;
}

inline void require_two_level(const ExperimentConfig& cfg, const char* what) {
    if (cfg.system.qubit_levels != 2)
        throw ConfigError(std::string("config: system.qubit_levels must be 2 for the ") + what +
                          " experiment");
}

// Truncation guard: the top Fock level must stay essentially unpopulated,
// otherwise results are truncation artifacts.
inline void check_truncation(const EvolutionDiagnostics& d, std::vector<std::string>& warnings,
                             const std::string& run) {
    if (d.max_top_two_population >= 1e-4)
        warnings.push_back(run + ": top two Fock levels reached population " +
                           std::to_string(d.max_top_two_population) +
                           " (>= 1e-4); increase system.N");
}

// Run tasks 0..count-1 on `threads` workers, results assembled by index.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += threads) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

// Dominant oscillation frequency (linear GHz) of a uniformly sampled real
// series: mean removal, Hann window, dense scan of the windowed discrete
// Fourier amplitude followed by a ternary-search refinement. Deterministic.
inline double dominant_frequency(const std::vector<double>& times,
                                 const std::vector<double>& values) {
    const size_t n = times.size();
    if (n < 4 || values.size() != n)
        throw std::invalid_argument("dominant_frequency: need >= 4 aligned samples");
    const double span = times.back() - times.front();
    const double dt = span / static_cast<double>(n - 1);

    std::vector<double> w(n);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    for (size_t k = 0; k < n; ++k) {
        const double hann = 0.5 - 0.5 * std::cos(kTwoPi * k / (n - 1));
        w[k] = hann * (values[k] - mean);
    }

    auto amplitude = [&](double f) {
        Complex acc = 0.0;
        for (size_t k = 0; k < n; ++k)
            acc += w[k] * std::exp(-kI * (kTwoPi * f * times[k]));
        return std::abs(acc);
    };

    const double f_lo = 0.5 / span;       // below this the window sees < half a period
    const double f_hi = 0.5 / dt;         // Nyquist
    const int scan = 2000;
    double best_f = f_lo, best_a = -1.0;
    const double step = (f_hi - f_lo) / scan;
    for (int i = 0; i <= scan; ++i) {
        const double f = f_lo + i * step;
        const double a = amplitude(f);
        if (a > best_a) {
            best_a = a;
            best_f = f;
        }
    }
    double lo = std::max(f_lo, best_f - step);
    double hi = std::min(f_hi, best_f + step);
    for (int it = 0; it < 60; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (amplitude(m1) < amplitude(m2)) lo = m1;
        else hi = m2;
    }
    return 0.5 * (lo + hi);
}

struct BaselineResult {
    EvolutionResult coupled_closed;
    EvolutionResult uncoupled_closed;
    EvolutionResult dissipative;
};

// Three scenarios from the same initial state (one photon in the cavity,
// qubit ground, no drive): coupled closed, uncoupled closed (g = 0), and
// coupled dissipative with the configured rates.
inline BaselineResult run_baseline(const ExperimentConfig& cfg,
                                   std::vector<std::string>* warnings = nullptr) {
    detail::require_two_level(cfg, "baseline");
    const int N = cfg.system.N;
    const DimensionList dims{N, 2};
    const QuantumState psi0 = product_fock_state(dims, {1, 0});
    const TimeGrid grid(0.0, cfg.grid.t_end_ns, cfg.grid.points, cfg.grid.substeps);
    const NamedObservables obs = expected_observables_default(dims);

    const HamiltonianSpec h_coupled = jc_hamiltonian(cfg.omega_R(), cfg.omega_T(), cfg.g(), N);
    const HamiltonianSpec h_uncoupled = jc_hamiltonian(cfg.omega_R(), cfg.omega_T(), 0.0, N);
    const auto channels =
        collapse_set(cfg.kappa(), cfg.gamma(), cfg.dissipation.n_th, dims);

    BaselineResult r;
    r.coupled_closed = evolve_schrodinger(h_coupled, psi0, grid, obs);
    r.uncoupled_closed = evolve_schrodinger(h_uncoupled, psi0, grid, obs);
    r.dissipative = evolve_master(h_coupled, psi0, channels, grid, obs);

    if (warnings) {
        detail::check_truncation(r.coupled_closed.diagnostics, *warnings, "baseline coupled");
        detail::check_truncation(r.dissipative.diagnostics, *warnings, "baseline dissipative");
    }
    return r;
}

inline void write_baseline(const ExperimentConfig& cfg, const BaselineResult& r,
                           const std::filesystem::path& out_dir) {
    const std::vector<std::string> header = {
        "t_ns", "n_cavity_coupled", "p_excited_coupled", "n_cavity_uncoupled",
        "p_excited_uncoupled", "n_cavity_dissipative", "p_excited_dissipative"};
    const auto& t = r.coupled_closed.times;
    std::vector<std::vector<double>> rows;
    rows.reserve(t.size());
    for (size_t i = 0; i < t.size(); ++i)
        rows.push_back({t[i], r.coupled_closed.at("n_cavity")[i],
                        r.coupled_closed.at("p_excited")[i],
                        r.uncoupled_closed.at("n_cavity")[i],
                        r.uncoupled_closed.at("p_excited")[i],
                        r.dissipative.at("n_cavity")[i],
                        r.dissipative.at("p_excited")[i]});
    detail::write_table(out_dir, "baseline", cfg.output.format, header, rows);

    nlohmann::json j;
    j["config"] = detail::resolved_config_json(cfg);
    auto peak = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end());
    };
    j["peak_p_excited_coupled"] = peak(r.coupled_closed.at("p_excited"));
    j["final_n_cavity_closed"] = r.coupled_closed.at("n_cavity").back();
    j["final_n_cavity_dissipative"] = r.dissipative.at("n_cavity").back();
    j["diagnostics"] = {
        {"max_trace_drift", r.dissipative.diagnostics.max_trace_drift},
        {"max_hermiticity_residue", r.dissipative.diagnostics.max_hermiticity_residue},
        {"min_eigenvalue", r.dissipative.diagnostics.min_eigenvalue},
        {"max_top_fock_population", r.dissipative.diagnostics.max_top_level_population}};
    auto js = detail::open_output(out_dir, "baseline_summary.json");
    js << j.dump(2) << '\n';
}

// Vacuum-Rabi chevron: for each detuning delta, omega_T = omega_R - delta,
// initial state excited qubit + vacuum cavity, closed JC evolution (the
// drive participates only when drive.enabled_during_sweep is set).
inline SweepGrid run_chevron(const ExperimentConfig& cfg, int threads = 1,
                             std::vector<std::string>* warnings = nullptr) {
    detail::require_two_level(cfg, "chevron");
    const int N = cfg.system.N;
    const DimensionList dims{N, 2};
    const QuantumState psi0 = product_fock_state(dims, {0, 1});
    const TimeGrid grid(0.0, cfg.grid.t_end_ns, cfg.grid.points, cfg.grid.substeps);
    const NamedObservables obs = expected_observables_default(dims);

    SweepGrid sweep;
    sweep.times = grid.times();
    const int P = cfg.sweep.delta_points;
    sweep.delta_values.resize(P);
    for (int i = 0; i < P; ++i) {
        const double frac = P == 1 ? 0.0 : static_cast<double>(i) / (P - 1);
        const double d_ghz =
            cfg.sweep.delta_min_GHz + frac * (cfg.sweep.delta_max_GHz - cfg.sweep.delta_min_GHz);
        sweep.delta_values[i] = ghz_to_angular(d_ghz);
    }
    sweep.p_excited.resize(P);
    sweep.dominant_frequency_GHz.resize(P);

    std::vector<EvolutionDiagnostics> diags(P);
    detail::parallel_for(P, threads, [&](int i) {
        const double omega_T = cfg.omega_R() - sweep.delta_values[i];
        HamiltonianSpec h = jc_hamiltonian(cfg.omega_R(), omega_T, cfg.g(), N);
        if (cfg.drive.enabled_during_sweep) {
            DriveParams dp;
            dp.amplitude = cfg.drive_A();
            dp.omega_d = cfg.omega_d();
            dp.envelope = cfg.drive.envelope;
            dp.window_start_ns = cfg.drive.start_ns;
            dp.window_stop_ns = cfg.drive.stop_ns;
            for (auto& [op, coeff] : drive_term(dp, DriveTarget::Qubit, dims))
                h.add_term(std::move(op), std::move(coeff));
        }
        EvolutionResult r = evolve_schrodinger(h, psi0, grid, obs);
        sweep.p_excited[i] = r.at("p_excited");
        sweep.dominant_frequency_GHz[i] = dominant_frequency(r.times, sweep.p_excited[i]);
        diags[i] = r.diagnostics;
    });

    if (warnings)
        for (int i = 0; i < P; ++i)
            detail::check_truncation(diags[i], *warnings,
                                     "chevron delta index " + std::to_string(i));
    return sweep;
}

inline void write_chevron(const ExperimentConfig& cfg, const SweepGrid& sweep,
                          const std::filesystem::path& out_dir) {
    std::vector<std::vector<double>> rows;
    rows.reserve(sweep.delta_values.size() * sweep.times.size());
    for (size_t d = 0; d < sweep.delta_values.size(); ++d) {
        const double dghz = angular_to_ghz(sweep.delta_values[d]);
        for (size_t k = 0; k < sweep.times.size(); ++k)
            rows.push_back({dghz, sweep.times[k], sweep.p_excited[d][k]});
    }
    detail::write_table(out_dir, "chevron", cfg.output.format,
                        {"delta_GHz", "t_ns", "p_excited"}, rows);

    nlohmann::json j;
    j["config"] = detail::resolved_config_json(cfg);
    nlohmann::json freqs = nlohmann::json::array();
    for (size_t d = 0; d < sweep.delta_values.size(); ++d)
        freqs.push_back({{"delta_GHz", angular_to_ghz(sweep.delta_values[d])},
                         {"dominant_frequency_GHz", sweep.dominant_frequency_GHz[d]}});
    j["oscillation_frequencies"] = freqs;
    auto js = detail::open_output(out_dir, "chevron_summary.json");
    js << j.dump(2) << '\n';
}

struct ReadoutResult {
    double chi = 0.0;  // rad/ns
    std::vector<double> probe_omegas;  // rad/ns
    std::vector<Complex> reflection_ground;
    std::vector<Complex> reflection_excited;
    ComplexTrace trajectory_ground;
    ComplexTrace trajectory_excited;
    std::vector<double> separation;
};

// Dispersive readout report: chi from (g, Delta), state-conditioned
// reflection sweep about omega_r, and the conditioned-trajectory
// separation under a constant baseband tone.
inline ReadoutResult run_readout(const ExperimentConfig& cfg,
                                 std::vector<std::string>* warnings = nullptr) {
    const double delta_qr = cfg.omega_T() - cfg.omega_R();
    ReadoutResult r;
    r.chi = dispersive_shift(cfg.g(), delta_qr, warnings);

    const double kappa_c = cfg.kappa();
    if (kappa_c <= 0.0)
        throw ConfigError("config: dissipation.kappa_GHz must be positive for readout");

    const int P = cfg.readout.probe_points;
    const double half_span = 0.5 * ghz_to_angular(cfg.readout.probe_span_GHz);
    r.probe_omegas.resize(P);
    for (int i = 0; i < P; ++i)
        r.probe_omegas[i] =
            cfg.omega_R() - half_span + (2.0 * half_span * i) / (P - 1);
    r.reflection_ground = dispersive_reflection_sweep(r.probe_omegas, cfg.omega_R(), kappa_c,
                                                      r.chi, QubitState::Ground);
    r.reflection_excited = dispersive_reflection_sweep(r.probe_omegas, cfg.omega_R(), kappa_c,
                                                       r.chi, QubitState::Excited);

    ReadoutParams rp;
    rp.omega_r = cfg.omega_R();
    rp.kappa_c = kappa_c;
    rp.chi = r.chi;
    rp.epsilon_d = cfg.drive_A();
    rp.omega_d = cfg.omega_R();
    const Complex b_in = kI * rp.epsilon_d / std::sqrt(kappa_c);
    const TimeGrid grid(0.0, cfg.grid.t_end_ns, cfg.grid.points, cfg.grid.substeps);
    auto tone = [b_in](double) { return b_in; };
    r.trajectory_ground = conditioned_cavity_trajectory(rp, QubitState::Ground, tone, grid);
    r.trajectory_excited = conditioned_cavity_trajectory(rp, QubitState::Excited, tone, grid);
    r.separation = readout_separation(r.trajectory_ground, r.trajectory_excited);
    return r;
}

inline void write_readout(const ExperimentConfig& cfg, const ReadoutResult& r,
                          const std::filesystem::path& out_dir) {
    std::vector<std::vector<double>> rows;
    rows.reserve(r.probe_omegas.size());
    for (size_t i = 0; i < r.probe_omegas.size(); ++i) {
        const Complex g = r.reflection_ground[i];
        const Complex e = r.reflection_excited[i];
        rows.push_back({angular_to_ghz(r.probe_omegas[i]), g.real(), g.imag(), std::abs(g),
                        std::arg(g), e.real(), e.imag(), std::abs(e), std::arg(e)});
    }
    detail::write_table(out_dir, "readout", cfg.output.format,
                        {"omega_probe_GHz", "re_g", "im_g", "abs_g", "phase_g", "re_e", "im_e",
                         "abs_e", "phase_e"},
                        rows);

    std::vector<std::vector<double>> sep_rows;
    sep_rows.reserve(r.trajectory_ground.times.size());
    for (size_t i = 0; i < r.trajectory_ground.times.size(); ++i)
        sep_rows.push_back({r.trajectory_ground.times[i], r.trajectory_ground.values[i].real(),
                            r.trajectory_ground.values[i].imag(),
                            r.trajectory_excited.values[i].real(),
                            r.trajectory_excited.values[i].imag(), r.separation[i]});
    detail::write_table(out_dir, "readout_separation", cfg.output.format,
                        {"t_ns", "re_g", "im_g", "re_e", "im_e", "separation"}, sep_rows);
}

struct TransmonSpectrumRow {
    double ratio;
    double omega01_numeric_GHz;
    double omega01_asymptotic_GHz;
    double anharmonicity_GHz;
};

// Charge-basis spectrum over a log-spaced E_J/E_C sweep at fixed E_C.
inline std::vector<TransmonSpectrumRow> run_transmon_spectrum(
    const ExperimentConfig& cfg, std::vector<std::string>* warnings = nullptr) {
    const double E_C = ghz_to_angular(cfg.transmon.EC_GHz);
    if (warnings && cfg.transmon.ratio_min < 20.0)
        warnings->push_back("transmon: sweep enters E_J/E_C < 20, outside the transmon regime");
    const int P = cfg.transmon.ratio_points;
    std::vector<TransmonSpectrumRow> rows;
    rows.reserve(P);
    const double log_lo = std::log(cfg.transmon.ratio_min);
    const double log_hi = std::log(cfg.transmon.ratio_max);
    for (int i = 0; i < P; ++i) {
        const double ratio = std::exp(log_lo + (log_hi - log_lo) * i / (P - 1));
        TransmonParams p;
        p.E_C = E_C;
        p.E_J = ratio * E_C;
        p.n_cut = cfg.transmon.n_cut;
        const TransmonFrequencies f = transmon_frequencies(p);
        rows.push_back({ratio, angular_to_ghz(f.omega_01_numeric),
                        angular_to_ghz(f.omega_q_asymptotic),
                        angular_to_ghz(f.anharmonicity_numeric)});
    }
    return rows;
}

inline void write_transmon_spectrum(const ExperimentConfig& cfg,
                                    const std::vector<TransmonSpectrumRow>& rows,
                                    const std::filesystem::path& out_dir) {
    std::vector<std::vector<double>> table;
    table.reserve(rows.size());
    for (const auto& r : rows)
        table.push_back({r.ratio, r.omega01_numeric_GHz, r.omega01_asymptotic_GHz,
                         r.anharmonicity_GHz});
    detail::write_table(out_dir, "transmon", cfg.output.format,
                        {"EJ_over_EC", "omega01_numeric_GHz", "omega01_asymptotic_GHz",
                         "anharmonicity_GHz"},
                        table);
}

}  // namespace cqed
