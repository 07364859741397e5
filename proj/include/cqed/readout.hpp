#pragma once

// Input-output and dispersive-readout formulas: reflection coefficient,
// steady-state displacement, state-conditioned semiclassical cavity
// trajectories, and the input/output relation.
//
// Frequency-axis convention: a probe at angular frequency w maps to the
// Laplace point s = -i w (e^{-i w t} time convention), pinned by the
// s = -i w_r -> R = -1 on-resonance test.

#include "cqed/dynamics.hpp"
#include "cqed/units.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace cqed {

enum class QubitState { Ground, Excited };

struct ReadoutParams {
    double omega_r = 0.0;    // rad/ns
    double kappa_c = 0.0;    // line coupling rate, rad/ns
    double chi = 0.0;        // dispersive shift, rad/ns
    Complex epsilon_d = 0.0; // drive amplitude, rad/ns
    double omega_d = 0.0;    // rad/ns
};

struct ComplexTrace {
    std::vector<double> times;    // ns
    std::vector<Complex> values;  // <a~>(t)
};

// R(s) = (s + i w_r - kappa_c/2) / (s + i w_r + kappa_c/2); all-pass for
// purely imaginary s, pole at s = -i w_r - kappa_c/2.
inline Complex reflection_coefficient(Complex s, double omega_r, double kappa_c) {
    const Complex den = s + kI * omega_r + 0.5 * kappa_c;
    if (std::abs(den) <= 1e-15)
        throw std::domain_error(
            "reflection_coefficient: probe too close to the pole s = -i*omega_r - kappa_c/2");
    return (s + kI * omega_r - 0.5 * kappa_c) / den;
}

// Qubit-state-conditioned resonance: omega_r - chi/2 for ground,
// omega_r + chi/2 for excited (the -/+ ordering of the conditioned
// Langevin equation).
inline double shifted_resonance(double omega_r, double chi, QubitState qs) {
    return qs == QubitState::Ground ? omega_r - 0.5 * chi : omega_r + 0.5 * chi;
}

inline std::vector<Complex> dispersive_reflection_sweep(const std::vector<double>& probe_omegas,
                                                        double omega_r, double kappa_c,
                                                        double chi, QubitState qs) {
    const double wr = shifted_resonance(omega_r, chi, qs);
    std::vector<Complex> out;
    out.reserve(probe_omegas.size());
    for (double w : probe_omegas)
        out.push_back(reflection_coefficient(-kI * w, wr, kappa_c));
    return out;
}

// xi_d = -i eps_d / (kappa/2 + i (omega_r - omega_d)); |xi_d|^2 is the
// steady-state photon number.
inline Complex steady_state_displacement(const ReadoutParams& p) {
    if (p.kappa_c <= 0.0)
        throw std::domain_error("steady_state_displacement: kappa must be positive");
    return -kI * p.epsilon_d / (0.5 * p.kappa_c + kI * (p.omega_r - p.omega_d));
}

// Semiclassical conditioned cavity amplitude in the frame rotating at
// omega_r: d<a~>/dt = (-/+ i chi/2 - kappa_c/2) <a~> - sqrt(kappa_c) b_in(t),
// from <a~>(0) = 0, RK4 over the grid.
inline ComplexTrace conditioned_cavity_trajectory(const ReadoutParams& p, QubitState qs,
                                                  const std::function<Complex(double)>& b_in,
                                                  const TimeGrid& grid) {
    const Complex pole = (qs == QubitState::Ground ? -kI : kI) * (0.5 * p.chi)
                       - Complex{0.5 * p.kappa_c, 0.0};
    const double sqrt_kc = std::sqrt(p.kappa_c);
    auto rhs = [&](double t, Complex a) { return pole * a - sqrt_kc * b_in(t); };

    ComplexTrace trace;
    trace.times = grid.times();
    trace.values.reserve(grid.points);
    Complex a = 0.0;
    trace.values.push_back(a);
    const double h = grid.dt() / grid.substeps_per_point;
    for (int i = 1; i < grid.points; ++i) {
        double t = grid.t_start + (i - 1) * grid.dt();
        for (int s = 0; s < grid.substeps_per_point; ++s) {
            const Complex k1 = rhs(t, a);
            const Complex k2 = rhs(t + 0.5 * h, a + 0.5 * h * k1);
            const Complex k3 = rhs(t + 0.5 * h, a + 0.5 * h * k2);
            const Complex k4 = rhs(t + h, a + h * k3);
            a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
        }
        trace.values.push_back(a);
    }
    return trace;
}

// Fixed point of the conditioned ODE for a constant baseband input.
inline Complex conditioned_steady_state(const ReadoutParams& p, QubitState qs, Complex b_in) {
    const Complex pole = (qs == QubitState::Ground ? -kI : kI) * (0.5 * p.chi)
                       - Complex{0.5 * p.kappa_c, 0.0};
    return std::sqrt(p.kappa_c) * b_in / pole;
}

// b_out = b_in + sqrt(kappa_c) a, applied to semiclassical amplitudes.
inline Complex input_output(Complex b_in, Complex a, double kappa_c) {
    if (kappa_c < 0.0) throw std::domain_error("input_output: kappa_c must be >= 0");
    return b_in + std::sqrt(kappa_c) * a;
}

// V_rms = sqrt(hbar omega_s Z0) |beta_s|. SI units, hbar explicit; the one
// operation in the toolkit that leaves hbar = 1 conventions.
inline double voltage_from_field(double omega_s, double Z0, double beta_s_magnitude) {
    if (omega_s < 0.0 || Z0 < 0.0 || beta_s_magnitude < 0.0)
        throw std::domain_error("voltage_from_field: arguments must be >= 0");
    return std::sqrt(si::hbar * omega_s * Z0) * beta_s_magnitude;
}

// Pointwise |<a~_g>(t) - <a~_e>(t)|; quantifies dispersive distinguishability.
inline std::vector<double> readout_separation(const ComplexTrace& trace_g,
                                              const ComplexTrace& trace_e) {
    if (trace_g.times.size() != trace_e.times.size())
        throw std::invalid_argument("readout_separation: traces must share a grid");
    std::vector<double> sep(trace_g.values.size());
    for (size_t i = 0; i < sep.size(); ++i)
        sep[i] = std::abs(trace_g.values[i] - trace_e.values[i]);
    return sep;
}

}  // namespace cqed
