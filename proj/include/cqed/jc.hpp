#pragma once

// Closed-form Jaynes-Cummings spectrum: per-excitation-block detuning,
// Rabi frequencies, mixing coefficients, dressed energies. Serves as the
// analytic oracle for the dynamics module and the chevron frequency law.

#include "cqed/operators.hpp"

#include <cmath>

namespace cqed {

struct JCBlock {
    int n = 0;              // excitation index
    double delta = 0.0;     // omega_R - omega_T
    double Omega_n = 0.0;   // 2 g sqrt(n+1)
    double Delta_n = 0.0;   // sqrt(delta^2 + Omega_n^2)
    double sin_theta = 0.0;
    double cos_theta = 0.0;
    double E_plus = 0.0;    // (n + 1/2) omega_R + Delta_n / 2
    double E_minus = 0.0;   // (n + 1/2) omega_R - Delta_n / 2

    // Dressed states in the {|n+1,g>, |n,e>} basis. With the quotient
    // definitions of (sin, cos) below these diagonalize jc_block_matrix
    // exactly:
    //   |n,+> = sin(Theta) |n+1,g> - cos(Theta) |n,e>
    //   |n,-> = cos(Theta) |n+1,g> + sin(Theta) |n,e>
    Eigen::Vector2d plus_state() const { return {sin_theta, -cos_theta}; }
    Eigen::Vector2d minus_state() const { return {cos_theta, sin_theta}; }
};

// The mixing pair is computed from the explicit quotient forms
// sin = Omega / r, cos = (Delta - delta) / r with r = sqrt((Delta-delta)^2
// + Omega^2), avoiding arctan branch ambiguity. At the degenerate point
// g = 0 with Delta_n = delta both quotients are 0/0; the continuity limit
// (sin -> 1, cos -> 0) is taken there.
inline JCBlock jc_block(int n, double omega_R, double omega_T, double g) {
    if (n < 0) throw std::invalid_argument("jc_block: n must be >= 0");
    JCBlock b;
    b.n = n;
    b.delta = omega_R - omega_T;
    b.Omega_n = 2.0 * g * std::sqrt(static_cast<double>(n + 1));
    b.Delta_n = std::hypot(b.delta, b.Omega_n);
    const double num = b.Delta_n - b.delta;
    const double r = std::hypot(num, b.Omega_n);
    if (r == 0.0) {
        b.sin_theta = 1.0;
        b.cos_theta = 0.0;
    } else {
        b.sin_theta = b.Omega_n / r;
        b.cos_theta = num / r;
    }
    b.E_plus = (n + 0.5) * omega_R + 0.5 * b.Delta_n;
    b.E_minus = (n + 0.5) * omega_R - 0.5 * b.Delta_n;
    return b;
}

// Effective 2x2 block Hamiltonian in the {|n+1,g>, |n,e>} basis.
inline Operator jc_block_matrix(int n, double omega_R, double omega_T, double g) {
    if (n < 0) throw std::invalid_argument("jc_block_matrix: n must be >= 0");
    const double off = -g * std::sqrt(static_cast<double>(n + 1));
    Matrix m(2, 2);
    m << (n + 1) * omega_R - 0.5 * omega_T, off,
         off, n * omega_R + 0.5 * omega_T;
    return {DimensionList{2}, std::move(m)};
}

// Dispersive shift chi = g^2 / Delta_qr with Delta_qr = omega_q - omega_r.
inline double dispersive_shift(double g, double Delta_qr,
                               std::vector<std::string>* warnings = nullptr) {
    if (Delta_qr == 0.0)
        throw std::domain_error("dispersive_shift: undefined at zero qubit-resonator detuning");
    if (warnings && std::abs(Delta_qr) < 10.0 * std::abs(g))
        warnings->push_back("dispersive_shift: |Delta| < 10 g, outside the dispersive regime");
    return g * g / Delta_qr;
}

}  // namespace cqed
