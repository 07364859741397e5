#pragma once

// Closed-form device formulas and Hamiltonian builders: resonator,
// Josephson relations, transmon (charge basis and Duffing reduction),
// transmon-resonator coupling, and drive terms.

#include "cqed/hamiltonian.hpp"
#include "cqed/operators.hpp"
#include "cqed/units.hpp"

#include <cmath>
#include <optional>
#include <tuple>

namespace cqed {

struct ResonatorParams {
    double omega_r = 0.0;  // rad/ns
    std::optional<double> L;
    std::optional<double> C;
};

struct TransmonParams {
    double E_J = 0.0;   // rad/ns
    double E_C = 0.0;   // rad/ns
    int n_cut = 20;     // charge-basis cutoff, matrix spans [-n_cut, n_cut]
    int levels = 2;     // Duffing truncation
};

struct CouplingParams {
    double g = 0.0;  // rad/ns
};

enum class DriveEnvelope { Constant, RectangularWindow };
enum class DriveTarget { Cavity, Qubit };

struct DriveParams {
    double amplitude = 0.0;  // rad/ns
    double omega_d = 0.0;    // rad/ns
    DriveEnvelope envelope = DriveEnvelope::Constant;
    double window_start_ns = 0.0;
    double window_stop_ns = 0.0;
};

struct JosephsonParams {
    double I_c = 0.0;  // A
};

inline double resonator_frequency(double L, double C) {
    if (L <= 0.0 || C <= 0.0)
        throw std::domain_error("resonator_frequency: L and C must be positive");
    return 1.0 / std::sqrt(L * C);
}

inline double resonator_impedance(double L, double C) {
    if (L <= 0.0 || C <= 0.0)
        throw std::domain_error("resonator_impedance: L and C must be positive");
    return std::sqrt(L / C);
}

// DC Josephson relation I = I_c sin(phi).
inline double josephson_current(double I_c, double phase) {
    return I_c * std::sin(phase);
}

// AC Josephson relation: phase velocity (2e/hbar) V, SI units (rad/s per volt).
inline double josephson_frequency(double V) {
    return 2.0 * si::e / si::hbar * V;
}

inline double critical_current_from_energy(double E_J_joule) {
    return 2.0 * si::e * E_J_joule / si::hbar;
}

// Charge-basis transmon Hamiltonian 4 E_C n^2 - E_J cos(phi), with the
// cosine realized as Cooper-pair hopping between adjacent charge states:
// diagonal 4 E_C k^2 for k in [-n_cut, n_cut], off-diagonals -E_J/2.
inline Operator transmon_charge_hamiltonian(const TransmonParams& p) {
    if (p.n_cut < 5)
        throw std::invalid_argument("transmon_charge_hamiltonian: n_cut must be >= 5");
    if (p.E_J <= 0.0 || p.E_C <= 0.0)
        throw std::domain_error("transmon_charge_hamiltonian: E_J and E_C must be positive");
    const int dim = 2 * p.n_cut + 1;
    Matrix m = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double k = static_cast<double>(i - p.n_cut);
        m(i, i) = 4.0 * p.E_C * k * k;
        if (i + 1 < dim) {
            m(i, i + 1) = -0.5 * p.E_J;
            m(i + 1, i) = -0.5 * p.E_J;
        }
    }
    return {DimensionList{dim}, std::move(m)};
}

struct TransmonFrequencies {
    double omega_q_asymptotic;    // sqrt(8 E_C E_J) - E_C
    double omega_01_numeric;      // E1 - E0 from charge-basis diagonalization
    double anharmonicity_numeric; // (E1 - E0) - (E2 - E1)
};

inline TransmonFrequencies transmon_frequencies(const TransmonParams& p) {
    const Operator h = transmon_charge_hamiltonian(p);
    const EigenSystem es = eigen_hermitian(h);
    const double e0 = es.values(0), e1 = es.values(1), e2 = es.values(2);
    TransmonFrequencies f{};
    f.omega_q_asymptotic = std::sqrt(8.0 * p.E_C * p.E_J) - p.E_C;
    f.omega_01_numeric = e1 - e0;
    f.anharmonicity_numeric = (e1 - e0) - (e2 - e1);
    return f;
}

// Fock-diagonal Duffing transmon: E_k = k omega_q - (E_C/2) k (k-1).
inline Operator duffing_hamiltonian(double omega_q, double E_C, int levels) {
    if (levels < 2) throw std::invalid_argument("duffing_hamiltonian: levels must be >= 2");
    Matrix m = Matrix::Zero(levels, levels);
    for (int k = 0; k < levels; ++k)
        m(k, k) = k * omega_q - 0.5 * E_C * k * (k - 1);
    return {DimensionList{levels}, std::move(m)};
}

// Jaynes-Cummings Hamiltonian on dims (N, 2), cavity first:
// omega_R a^dag a - (omega_T/2) sigma_z + g (a sigma_+ + a^dag sigma_-).
inline HamiltonianSpec jc_hamiltonian(double omega_R, double omega_T, double g, int N) {
    if (N < 2) throw std::invalid_argument("jc_hamiltonian: N must be >= 2");
    const Operator a = destroy(N);
    const Operator ad = create(N);
    const Operator id_c = identity(N);
    const Operator id_q = identity(2);
    Operator h = omega_R * tensor(number(N), id_q)
               - 0.5 * omega_T * tensor(id_c, sigma_z())
               + g * (tensor(a, sigma_plus()) + tensor(ad, sigma_minus()));
    return HamiltonianSpec{std::move(h)};
}

// Full coupled transmon-resonator Hamiltonian with counter-rotating terms
// kept exactly: omega_R a^dag a + omega_T b^dag b - (E_C/2) b^dag b^dag b b
// - g (b^dag - b)(a^dag - a), on dims (N, levels).
inline HamiltonianSpec coupled_duffing_hamiltonian(double omega_R, double omega_T,
                                                   double E_C, double g, int N, int levels) {
    if (N < 2 || levels < 2)
        throw std::invalid_argument("coupled_duffing_hamiltonian: N and levels must be >= 2");
    const Operator a = destroy(N);
    const Operator ad = create(N);
    const Operator b = destroy(levels);
    const Operator bd = create(levels);
    const Operator id_c = identity(N);
    const Operator id_q = identity(levels);
    Operator kerr = bd * bd * b * b;
    // Tensor order is cavity (x) qubit; the two factors commute, so the
    // coupling factorizes as (a^dag - a) (x) (b^dag - b).
    Operator h = omega_R * tensor(number(N), id_q)
               + omega_T * tensor(id_c, number(levels))
               - 0.5 * E_C * tensor(id_c, kerr)
               - g * tensor(ad - a, bd - b);
    return HamiltonianSpec{std::move(h)};
}

// g = omega_r (C_g/C_T) (E_J / 2 E_C)^{1/4} sqrt(pi Z_R / 2 R_K).
inline double coupling_constant(double omega_r, double C_g, double C_T,
                                double E_J, double E_C, double Z_R) {
    if (omega_r <= 0.0 || C_g < 0.0 || C_T <= 0.0 || E_J <= 0.0 || E_C <= 0.0 || Z_R <= 0.0)
        throw std::domain_error("coupling_constant: parameters out of domain");
    return omega_r * (C_g / C_T) * std::pow(E_J / (2.0 * E_C), 0.25)
         * std::sqrt(std::numbers::pi * Z_R / (2.0 * si::R_K));
}

// Lab-frame drive A (e^{-i w_d t} b^dag + e^{i w_d t} b) on the chosen
// subsystem, as coefficient-operator pairs ready for a HamiltonianSpec.
// Empty when A = 0.
inline std::vector<std::pair<Operator, TimeCoefficient>>
drive_term(const DriveParams& p, DriveTarget target, const DimensionList& dims) {
    if (p.amplitude < 0.0) throw std::domain_error("drive_term: amplitude must be >= 0");
    if (dims.dims.size() != 2)
        throw std::invalid_argument("drive_term: expected a two-subsystem dimension list");
    std::vector<std::pair<Operator, TimeCoefficient>> terms;
    if (p.amplitude == 0.0) return terms;

    Operator raise, lower;
    if (target == DriveTarget::Cavity) {
        raise = tensor(create(dims.dims[0]), identity(dims.dims[1]));
        lower = tensor(destroy(dims.dims[0]), identity(dims.dims[1]));
    } else {
        raise = tensor(identity(dims.dims[0]), create(dims.dims[1]));
        lower = tensor(identity(dims.dims[0]), destroy(dims.dims[1]));
    }

    const double A = p.amplitude;
    const double wd = p.omega_d;
    auto window = [p](double t) -> double {
        if (p.envelope == DriveEnvelope::Constant) return 1.0;
        return (t >= p.window_start_ns && t < p.window_stop_ns) ? 1.0 : 0.0;
    };
    terms.emplace_back(std::move(raise), [A, wd, window](double t) {
        return A * window(t) * std::exp(-kI * wd * t);
    });
    terms.emplace_back(std::move(lower), [A, wd, window](double t) {
        return A * window(t) * std::exp(kI * wd * t);
    });
    return terms;
}

// Rotating-frame driven mode: static Delta n + (eps_d b^dag + eps_d^* b)
// with Delta = omega_target - omega_d, on a single n-dimensional mode.
inline Operator rotating_frame_drive(double omega_target, double omega_d,
                                     Complex epsilon_d, int n) {
    const double delta = omega_target - omega_d;
    Operator h = delta * number(n)
               + epsilon_d * create(n) + std::conj(epsilon_d) * destroy(n);
    return h;
}

}  // namespace cqed
