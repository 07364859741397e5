#pragma once

// Unit conventions: hbar = 1, energies and rates in angular frequency
// (rad/ns), time in ns. Config files speak linear GHz, converted on ingest.
// A few electrical formulas (Josephson frequency, voltage-field relation)
// use SI explicitly and say so at the call site.

#include <numbers>

namespace cqed {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Linear GHz -> angular rad/ns (1 GHz = 1/ns).
constexpr double ghz_to_angular(double f_ghz) { return kTwoPi * f_ghz; }
constexpr double angular_to_ghz(double w) { return w / kTwoPi; }

// CODATA 2018 exact/defined values (SI).
namespace si {
constexpr double e = 1.602176634e-19;        // C
constexpr double h = 6.62607015e-34;         // J s
constexpr double hbar = 1.054571817e-34;     // J s
constexpr double R_K = h / (e * e);          // von Klitzing, Ohm
}  // namespace si

}  // namespace cqed
