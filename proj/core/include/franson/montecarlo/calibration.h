#pragma once

// Closed-form rate predictions and the one-time calibration of the source.
//
// The source rate is not a measured quantity, so it is fixed from the
// observed detector rates. Two numbers are solved for:
//
//  1. x = pair_rate * pair_coupling_efficiency, the collected photon flux,
//     chosen so predicted singles (photons + dark counts, after detector dead
//     time) match the target singles in the least-relative-squares sense.
//  2. pair_coupling_efficiency, chosen so that the mean true windowed
//     coincidence rate S stands to the predicted accidental rate A as the
//     measured fringe contrasts require: S / A = V_raw / (V_net - V_raw).
//
// Singles scale with x and true coincidences with x * efficiency, so the two
// steps are independent.

#include <array>

#include "franson/scenario.h"

namespace franson::mc {

struct RatePrediction {
  // Photon flux reaching each station's detectors, before dead time.
  std::array<double, 2> photon_rate_hz{};
  // Registered singles per station (photons + dark, after dead time).
  std::array<double, 2> singles_hz{};
  // Fraction of the central coincidence peak inside the window.
  double window_fraction = 0.0;
  // Fraction of start tags that find the converter idle.
  double tphc_live_fraction = 0.0;
  // Phase-averaged mean of the windowed true coincidences.
  double true_coincidences_hz = 0.0;
  double accidentals_hz = 0.0;
  // Difference-time sigma of the central peak.
  double difference_sigma_ps = 0.0;
};

RatePrediction predict_rates(const Scenario& scenario);

struct CalibrationTargets {
  std::array<double, 2> singles_hz{164e3, 167e3};
  double raw_visibility = 0.46;
  double net_visibility = 0.816;
};

struct CalibrationResult {
  double pair_rate_hz = 0.0;
  double pair_coupling_efficiency = 1.0;
  RatePrediction predicted;
};

// Throws ValidationError if the targets cannot be met (e.g. the required
// coupling efficiency exceeds one).
CalibrationResult calibrate(const Scenario& scenario,
                            const CalibrationTargets& targets = {});

Scenario apply_calibration(Scenario scenario, const CalibrationResult& result);

}  // namespace franson::mc
