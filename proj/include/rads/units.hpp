#pragma once

#include <numbers>

// Unit conventions used throughout the numeric core:
//   time          -> ns
//   frequencies   -> angular, rad/ns
// User-facing numbers are ordinary frequencies (GHz for qubit/resonator
// frequencies, MHz for couplings); 1 GHz ordinary = 2*pi rad/ns.

namespace rads::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double ghz_to_rad_per_ns(double f_ghz) { return two_pi * f_ghz; }
constexpr double mhz_to_rad_per_ns(double f_mhz) { return two_pi * f_mhz * 1e-3; }
constexpr double rad_per_ns_to_ghz(double w) { return w / two_pi; }
constexpr double rad_per_ns_to_mhz(double w) { return w / two_pi * 1e3; }

}  // namespace rads::units
