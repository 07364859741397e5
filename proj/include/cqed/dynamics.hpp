#pragma once

// Time evolution: unitary Schrodinger and dissipative Lindblad propagation
// of HamiltonianSpec systems with observable tracking. Fixed-step RK4 with
// per-grid-point substeps; deterministic by construction so sweep CSVs are
// byte-identical across runs and worker counts.

#include "cqed/hamiltonian.hpp"
#include "cqed/operators.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace cqed {

struct CollapseChannel {
    Operator op;        // rate pre-folded: sqrt(rate) * bare operator
    std::string label;
};

struct TimeGrid {
    double t_start = 0.0;  // ns
    double t_end = 0.0;
    int points = 2;
    int substeps_per_point = 1;

    TimeGrid() = default;
    TimeGrid(double t0, double t1, int n, int sub)
        : t_start(t0), t_end(t1), points(n), substeps_per_point(sub) {
        if (!(t_end > t_start)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
        if (points < 2) throw std::invalid_argument("TimeGrid: points must be >= 2");
        if (substeps_per_point < 1) throw std::invalid_argument("TimeGrid: substeps must be >= 1");
    }

    double dt() const { return (t_end - t_start) / (points - 1); }

    std::vector<double> times() const {
        std::vector<double> t(points);
        for (int i = 0; i < points; ++i) t[i] = t_start + i * dt();
        return t;
    }
};

struct EvolutionDiagnostics {
    // Pre-correction drift: |Tr rho - 1| for master runs, |norm - 1| for pure.
    double max_trace_drift = 0.0;
    double max_hermiticity_residue = 0.0;  // max |rho - rho^dag| before symmetrization
    double min_eigenvalue = 0.0;           // over all grid points
    double max_top_level_population = 0.0;   // top Fock level of the first subsystem
    double max_top_two_population = 0.0;     // top two Fock levels
};

struct EvolutionResult {
    std::vector<double> times;  // ns
    std::vector<std::pair<std::string, std::vector<double>>> series;
    EvolutionDiagnostics diagnostics;

    const std::vector<double>& at(const std::string& name) const {
        for (const auto& [n, v] : series)
            if (n == name) return v;
        throw std::invalid_argument("EvolutionResult: no series named " + name);
    }
};

using NamedObservables = std::vector<std::pair<std::string, Operator>>;

// Default observable set over a (cavity, qubit) space: cavity occupation,
// qubit excited-state population, top-Fock truncation guard.
inline NamedObservables expected_observables_default(const DimensionList& dims) {
    if (dims.dims.size() != 2)
        throw std::invalid_argument("expected_observables_default: expected two subsystems");
    const int N = dims.dims[0];
    const int q = dims.dims[1];
    NamedObservables obs;
    obs.emplace_back("n_cavity", tensor(number(N), identity(q)));
    obs.emplace_back("p_excited", tensor(identity(N), projector(q, 1)));
    obs.emplace_back("top_fock", tensor(projector(N, N - 1), identity(q)));
    return obs;
}

// The three dissipation channels on the composite (cavity, qubit) space:
// sqrt(kappa (1 + n_th)) a, sqrt(kappa n_th) a^dag, sqrt(gamma) sigma_-.
// Zero-rate channels are omitted; at n_th = 0 the a^dag channel vanishes.
inline std::vector<CollapseChannel> collapse_set(double kappa, double gamma, double n_th,
                                                 const DimensionList& dims) {
    if (kappa < 0.0 || gamma < 0.0 || n_th < 0.0)
        throw std::domain_error("collapse_set: rates must be non-negative");
    if (dims.dims.size() != 2)
        throw std::invalid_argument("collapse_set: expected two subsystems");
    const int N = dims.dims[0];
    const int q = dims.dims[1];
    std::vector<CollapseChannel> channels;
    if (kappa > 0.0) {
        channels.push_back({std::sqrt(kappa * (1.0 + n_th)) * tensor(destroy(N), identity(q)),
                            "cavity_decay"});
        if (n_th > 0.0)
            channels.push_back({std::sqrt(kappa * n_th) * tensor(create(N), identity(q)),
                                "cavity_thermal"});
    }
    if (gamma > 0.0)
        channels.push_back({std::sqrt(gamma) * tensor(identity(N), sigma_minus()),
                            "qubit_relaxation"});
    return channels;
}

// drho/dt = -i [H, rho] + sum_k (L rho L^dag - 1/2 {L^dag L, rho}).
inline Matrix lindblad_rhs(const Matrix& h, const Matrix& rho,
                           const std::vector<CollapseChannel>& channels) {
    Matrix d = -kI * (h * rho - rho * h);
    for (const auto& ch : channels) {
        const Matrix& L = ch.op.matrix;
        const Matrix ldl = L.adjoint() * L;
        d += L * rho * L.adjoint() - 0.5 * (ldl * rho + rho * ldl);
    }
    return d;
}

inline Matrix lindblad_rhs(const Operator& h, const Matrix& rho,
                           const std::vector<CollapseChannel>& channels) {
    if (h.matrix.rows() != rho.rows())
        throw std::invalid_argument("lindblad_rhs: Hamiltonian/state dims mismatch");
    return lindblad_rhs(h.matrix, rho, channels);
}

namespace detail {

// Population of the composite state in cavity level k (summed over the
// second subsystem), from the density-matrix diagonal.
inline double cavity_level_population(const Matrix& rho, const DimensionList& dims, int k) {
    if (dims.dims.size() != 2) return 0.0;
    const int q = dims.dims[1];
    double p = 0.0;
    for (int j = 0; j < q; ++j) p += rho(k * q + j, k * q + j).real();
    return p;
}

inline double cavity_level_population(const Vector& psi, const DimensionList& dims, int k) {
    if (dims.dims.size() != 2) return 0.0;
    const int q = dims.dims[1];
    double p = 0.0;
    for (int j = 0; j < q; ++j) p += std::norm(psi(k * q + j));
    return p;
}

template <typename State>
void record_truncation(const State& s, const DimensionList& dims,
                       EvolutionDiagnostics& diag) {
    if (dims.dims.size() != 2 || dims.dims[0] < 3) return;
    const int N = dims.dims[0];
    const double top = cavity_level_population(s, dims, N - 1);
    const double top2 = top + cavity_level_population(s, dims, N - 2);
    diag.max_top_level_population = std::max(diag.max_top_level_population, top);
    diag.max_top_two_population = std::max(diag.max_top_two_population, top2);
}

}  // namespace detail

// Density-matrix propagation. Pure initial states are promoted. After each
// RK4 substep the state is symmetrized and trace-normalized, with the
// pre-correction drift recorded; drift beyond 1e-6 is a hard error.
inline EvolutionResult evolve_master(const HamiltonianSpec& h, const QuantumState& rho0,
                                     const std::vector<CollapseChannel>& channels,
                                     const TimeGrid& grid, const NamedObservables& observables) {
    if (h.dims() != rho0.dims)
        throw std::invalid_argument("evolve_master: Hamiltonian/state dims mismatch");
    for (const auto& ch : channels)
        if (ch.op.dims != h.dims())
            throw std::invalid_argument("evolve_master: channel dims mismatch");

    EvolutionResult result;
    result.times = grid.times();
    for (const auto& [name, op] : observables) {
        if (op.dims != h.dims())
            throw std::invalid_argument("evolve_master: observable dims mismatch: " + name);
        result.series.emplace_back(name, std::vector<double>{});
        result.series.back().second.reserve(grid.points);
    }

    Matrix rho = rho0.density();
    const bool static_h = h.is_static();
    const Matrix h0 = h.static_part.matrix;
    auto rhs = [&](double t, const Matrix& r) {
        return static_h ? lindblad_rhs(h0, r, channels) : lindblad_rhs(h.at(t), r, channels);
    };

    EvolutionDiagnostics& diag = result.diagnostics;
    diag.min_eigenvalue = 1.0;

    auto record = [&](const Matrix& r) {
        for (size_t i = 0; i < observables.size(); ++i) {
            const Complex v = (r * observables[i].second.matrix).trace();
            result.series[i].second.push_back(v.real());
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(r, Eigen::EigenvaluesOnly);
        diag.min_eigenvalue = std::min(diag.min_eigenvalue, es.eigenvalues().minCoeff());
        detail::record_truncation(r, h.dims(), diag);
    };

    record(rho);
    const double hstep = grid.dt() / grid.substeps_per_point;
    for (int i = 1; i < grid.points; ++i) {
        double t = grid.t_start + (i - 1) * grid.dt();
        for (int s = 0; s < grid.substeps_per_point; ++s) {
            const Matrix k1 = rhs(t, rho);
            const Matrix k2 = rhs(t + 0.5 * hstep, rho + 0.5 * hstep * k1);
            const Matrix k3 = rhs(t + 0.5 * hstep, rho + 0.5 * hstep * k2);
            const Matrix k4 = rhs(t + hstep, rho + hstep * k3);
            rho += (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += hstep;

            const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
            if (drift > 1e-6)
                throw ContractError("evolve_master: trace drift " + std::to_string(drift) +
                                    " exceeds 1e-6; increase substeps_per_point");
            diag.max_trace_drift = std::max(diag.max_trace_drift, drift);
            const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
            diag.max_hermiticity_residue = std::max(diag.max_hermiticity_residue, herm);
            rho = 0.5 * (rho + rho.adjoint()).eval();
            rho /= rho.trace().real();
        }
        record(rho);
    }
    return result;
}

// Closed-system propagation of a pure state, i d psi/dt = H psi, with
// per-step renormalization and pre-correction norm drift recorded.
inline EvolutionResult evolve_schrodinger(const HamiltonianSpec& h, const QuantumState& psi0,
                                          const TimeGrid& grid,
                                          const NamedObservables& observables) {
    if (psi0.kind != QuantumState::Kind::Pure)
        throw std::invalid_argument("evolve_schrodinger: requires a pure state");
    if (h.dims() != psi0.dims)
        throw std::invalid_argument("evolve_schrodinger: Hamiltonian/state dims mismatch");

    EvolutionResult result;
    result.times = grid.times();
    for (const auto& [name, op] : observables) {
        if (op.dims != h.dims())
            throw std::invalid_argument("evolve_schrodinger: observable dims mismatch: " + name);
        result.series.emplace_back(name, std::vector<double>{});
        result.series.back().second.reserve(grid.points);
    }

    Vector psi = psi0.vec;
    const bool static_h = h.is_static();
    const Matrix h0 = h.static_part.matrix;
    auto rhs = [&](double t, const Vector& v) -> Vector {
        return static_h ? Vector(-kI * (h0 * v)) : Vector(-kI * (h.at(t) * v));
    };

    EvolutionDiagnostics& diag = result.diagnostics;
    auto record = [&](const Vector& v) {
        for (size_t i = 0; i < observables.size(); ++i) {
            const Complex val = v.dot(observables[i].second.matrix * v);
            result.series[i].second.push_back(val.real());
        }
        detail::record_truncation(v, h.dims(), diag);
    };

    record(psi);
    const double hstep = grid.dt() / grid.substeps_per_point;
    for (int i = 1; i < grid.points; ++i) {
        double t = grid.t_start + (i - 1) * grid.dt();
        for (int s = 0; s < grid.substeps_per_point; ++s) {
            const Vector k1 = rhs(t, psi);
            const Vector k2 = rhs(t + 0.5 * hstep, psi + 0.5 * hstep * k1);
            const Vector k3 = rhs(t + 0.5 * hstep, psi + 0.5 * hstep * k2);
            const Vector k4 = rhs(t + hstep, psi + hstep * k3);
            psi += (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += hstep;

            const double drift = std::abs(psi.norm() - 1.0);
            if (drift > 1e-6)
                throw ContractError("evolve_schrodinger: norm drift " + std::to_string(drift) +
                                    " exceeds 1e-6; increase substeps_per_point");
            diag.max_trace_drift = std::max(diag.max_trace_drift, drift);
            psi /= psi.norm();
        }
        record(psi);
    }
    return result;
}

}  // namespace cqed
