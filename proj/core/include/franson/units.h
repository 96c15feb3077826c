#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace franson {

// All event times are integer picoseconds.
using Picoseconds = std::int64_t;

inline constexpr double kSpeedOfLight_m_per_s = 299'792'458.0;
inline constexpr double kPicosecondsPerSecond = 1e12;

// FWHM = 2 sqrt(2 ln 2) sigma for a Gaussian.
inline const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::numbers::ln2);

// Nearest integer picosecond, halves away from zero.
inline Picoseconds round_ps(double x) {
  return static_cast<Picoseconds>(x < 0.0 ? x - 0.5 : x + 0.5);
}

inline double fwhm_to_sigma(double fwhm) { return fwhm / kFwhmPerSigma; }

inline double db_to_transmittance(double loss_db) {
  return std::pow(10.0, -loss_db / 10.0);
}

}  // namespace franson
