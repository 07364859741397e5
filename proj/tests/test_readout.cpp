#include "cqed/readout.hpp"
#include "cqed/units.hpp"

#include <catch_amalgamated.hpp>

using namespace cqed;

namespace {
const double kOmegaR = ghz_to_angular(7.0);
const double kKappaC = ghz_to_angular(0.1);
}  // namespace

TEST_CASE("reflection is -1 on resonance and +1 far away") {
    const Complex on_res = reflection_coefficient(-kI * kOmegaR, kOmegaR, kKappaC);
    REQUIRE(std::abs(on_res - Complex{-1.0}) < 1e-14);

    const Complex far = reflection_coefficient(-kI * (kOmegaR + 1e4 * kKappaC), kOmegaR, kKappaC);
    REQUIRE(std::abs(far - Complex{1.0}) < 1e-3);
}

TEST_CASE("reflection is all-pass on the imaginary axis") {
    for (int i = 0; i <= 100; ++i) {
        const double w = kOmegaR + (i - 50) * 0.2 * kKappaC;
        const Complex r = reflection_coefficient(-kI * w, kOmegaR, kKappaC);
        REQUIRE(std::abs(std::abs(r) - 1.0) < 1e-13);
    }
}

TEST_CASE("reflection phase winds by 2 pi across the resonance") {
    // unwrapped phase accumulated over a wide symmetric sweep
    const int P = 2001;
    double prev = 0.0, total = 0.0;
    for (int i = 0; i < P; ++i) {
        const double w = kOmegaR + (i - (P - 1) / 2) * (400.0 * kKappaC / (P - 1));
        const double ph = std::arg(reflection_coefficient(-kI * w, kOmegaR, kKappaC));
        if (i > 0) {
            double d = ph - prev;
            while (d > std::numbers::pi) d -= kTwoPi;
            while (d < -std::numbers::pi) d += kTwoPi;
            total += d;
        }
        prev = ph;
    }
    REQUIRE(std::abs(std::abs(total) - kTwoPi) < 0.05);
}

TEST_CASE("reflection pole guard") {
    const Complex pole = -kI * kOmegaR - Complex{0.5 * kKappaC, 0.0};
    REQUIRE_THROWS_AS(reflection_coefficient(pole, kOmegaR, kKappaC), std::domain_error);
}

TEST_CASE("state-conditioned resonance shifts by -/+ chi/2") {
    const double chi = ghz_to_angular(-0.02);
    REQUIRE(shifted_resonance(kOmegaR, chi, QubitState::Ground) ==
            Catch::Approx(kOmegaR - 0.5 * chi));
    REQUIRE(shifted_resonance(kOmegaR, chi, QubitState::Excited) ==
            Catch::Approx(kOmegaR + 0.5 * chi));

    // the sweep dips (R = -1) exactly at the shifted resonances
    const std::vector<double> probes = {kOmegaR - 0.5 * chi, kOmegaR + 0.5 * chi};
    const auto rg = dispersive_reflection_sweep(probes, kOmegaR, kKappaC, chi,
                                                QubitState::Ground);
    const auto re = dispersive_reflection_sweep(probes, kOmegaR, kKappaC, chi,
                                                QubitState::Excited);
    REQUIRE(std::abs(rg[0] - Complex{-1.0}) < 1e-13);
    REQUIRE(std::abs(re[1] - Complex{-1.0}) < 1e-13);
    REQUIRE(std::abs(rg[1] - re[0]) > 0.0);  // states are distinguishable off their own dip
}

TEST_CASE("steady-state displacement") {
    ReadoutParams p;
    p.omega_r = kOmegaR;
    p.kappa_c = kKappaC;
    p.epsilon_d = Complex{0.3, 0.0};
    p.omega_d = kOmegaR;  // on resonance: xi = -2 i eps / kappa
    const Complex xi = steady_state_displacement(p);
    REQUIRE(std::abs(xi - (-2.0 * kI * p.epsilon_d / p.kappa_c)) < 1e-14);

    p.omega_d = kOmegaR - 0.5 * kKappaC;  // half-linewidth detuning halves the photon number
    const Complex xi_det = steady_state_displacement(p);
    REQUIRE(std::norm(xi_det) == Catch::Approx(0.5 * std::norm(xi)));

    p.kappa_c = 0.0;
    REQUIRE_THROWS_AS(steady_state_displacement(p), std::domain_error);
}

TEST_CASE("conditioned trajectory matches the closed-form relaxation") {
    ReadoutParams p;
    p.omega_r = kOmegaR;
    p.kappa_c = kKappaC;
    p.chi = ghz_to_angular(-0.02);
    const Complex b_in{0.0, 0.5};
    const TimeGrid grid(0.0, 80.0, 81, 60);

    for (QubitState qs : {QubitState::Ground, QubitState::Excited}) {
        const auto tr = conditioned_cavity_trajectory(p, qs, [&](double) { return b_in; }, grid);
        const Complex a_ss = conditioned_steady_state(p, qs, b_in);
        const Complex pole = (qs == QubitState::Ground ? -kI : kI) * (0.5 * p.chi)
                           - Complex{0.5 * p.kappa_c, 0.0};
        for (size_t i = 0; i < tr.times.size(); ++i) {
            // a(t) = a_ss (1 - e^{pole t}) from a(0) = 0
            const Complex exact = a_ss * (1.0 - std::exp(pole * tr.times[i]));
            REQUIRE(std::abs(tr.values[i] - exact) < 1e-10);
        }
        // fixed point reached well past 1/kappa_c
        REQUIRE(std::abs(tr.values.back() - a_ss) < 1e-8);
    }
}

TEST_CASE("steady output amplitude is not attenuated") {
    // lossless line: at steady state |b_out| = |b_in| for any chi
    ReadoutParams p;
    p.kappa_c = kKappaC;
    p.chi = ghz_to_angular(-0.02);
    const Complex b_in{0.4, -0.1};
    for (QubitState qs : {QubitState::Ground, QubitState::Excited}) {
        const Complex a_ss = conditioned_steady_state(p, qs, b_in);
        const Complex b_out = input_output(b_in, a_ss, p.kappa_c);
        REQUIRE(std::abs(b_out) == Catch::Approx(std::abs(b_in)).margin(1e-12));
    }
    REQUIRE_THROWS_AS(input_output(b_in, 0.0, -1.0), std::domain_error);
}

TEST_CASE("separation of conditioned trajectories") {
    ReadoutParams p;
    p.kappa_c = kKappaC;
    p.chi = ghz_to_angular(-0.02);
    const Complex b_in{0.0, 0.5};
    const TimeGrid grid(0.0, 80.0, 61, 60);
    const auto tg = conditioned_cavity_trajectory(p, QubitState::Ground,
                                                  [&](double) { return b_in; }, grid);
    const auto te = conditioned_cavity_trajectory(p, QubitState::Excited,
                                                  [&](double) { return b_in; }, grid);
    const auto sep = readout_separation(tg, te);
    REQUIRE(sep.front() == 0.0);
    const Complex gap = conditioned_steady_state(p, QubitState::Ground, b_in) -
                        conditioned_steady_state(p, QubitState::Excited, b_in);
    REQUIRE(sep.back() == Catch::Approx(std::abs(gap)).margin(1e-8));

    ComplexTrace short_trace;
    short_trace.times = {0.0};
    short_trace.values = {Complex{}};
    REQUIRE_THROWS_AS(readout_separation(tg, short_trace), std::invalid_argument);
}

TEST_CASE("voltage from field amplitude uses SI explicitly") {
    const double omega_s = kTwoPi * 7.0e9;  // rad/s
    const double Z0 = 50.0;
    const double v = voltage_from_field(omega_s, Z0, 3.0);
    REQUIRE(v == Catch::Approx(std::sqrt(si::hbar * omega_s * Z0) * 3.0));
    REQUIRE(voltage_from_field(omega_s, Z0, 0.0) == 0.0);
    REQUIRE_THROWS_AS(voltage_from_field(-1.0, Z0, 1.0), std::domain_error);
}
