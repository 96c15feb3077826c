#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "franson/montecarlo/engine.h"

namespace franson::analysis {

// One scan point as the fit sees it: abscissa, counts, and the variance used
// for the weight.
struct FringePoint {
  double phase_rad = 0.0;
  double counts = 0.0;
  double variance = 1.0;
};

// C(phi) = mean_level * (1 + visibility * cos(phi + phase_offset)).
struct FringeFit {
  double mean_level = 0.0;
  double mean_level_uncertainty = 0.0;
  double visibility = 0.0;
  double visibility_uncertainty = 0.0;
  double phase_offset = 0.0;
  double chi_square_per_dof = 0.0;
  // Set when visibility lies outside [-3 sigma, 1 + 3 sigma].
  bool visibility_out_of_range = false;
};

// Windowed coincidences against phase sum, variance max(count, 1).
std::vector<FringePoint> fringe_points(std::span<const mc::CountRecord> records);

// Weighted nonlinear least squares started from the first discrete Fourier
// components. Needs at least 5 points spanning more than half a period
// (InsufficientDataError); throws FitError when the solver does not converge.
// The uncertainty comes from the unscaled covariance, i.e. the variances are
// taken as known.
FringeFit fit_fringe(std::span<const FringePoint> points);
FringeFit fit_fringe(std::span<const mc::CountRecord> records);

// Parametric bootstrap: resample every point as Poisson(counts), refit,
// return the standard deviation of the fitted visibility.
double bootstrap_visibility_uncertainty(std::span<const FringePoint> points,
                                        unsigned replicas, std::uint64_t seed);

}  // namespace franson::analysis
