#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "franson/analysis/fringe_fit.h"

namespace franson::analysis {

// Accidental coincidences counted with the delay line in place: `count`
// events over `duration_s`.
struct AccidentalEstimate {
  double count = 0.0;
  double duration_s = 0.0;

  double mean_for(double interval_s) const;
  // Poisson error of the estimate, scaled to an interval.
  double uncertainty_for(double interval_s) const;
};

struct NetFringe {
  std::vector<FringePoint> points;
  FringeFit fit;
  // Fit covariance alone, without the accidental estimate's error.
  double statistical_uncertainty = 0.0;
  double accidentals_per_interval = 0.0;
  double accidentals_uncertainty = 0.0;
};

// Subtracts the accidental mean from each point without clamping, refits,
// and folds the estimate's own error into the visibility uncertainty. The
// estimate is common to every point, so its contribution is added as
// (dV/dA * sigma_A)^2 on top of the per-point fit covariance. Net points keep
// the raw-count variance.
NetFringe subtract_accidentals(std::span<const FringePoint> raw,
                               double accidentals_per_interval,
                               double accidentals_uncertainty);

// Records carry their own durations; the estimate is rescaled per point.
NetFringe subtract_accidentals(std::span<const mc::CountRecord> records,
                               const AccidentalEstimate& accidentals);

// Bootstrap of the net visibility: resamples every raw count and the
// accidental count as Poisson variables.
double bootstrap_net_visibility_uncertainty(
    std::span<const mc::CountRecord> records,
    const AccidentalEstimate& accidentals, unsigned replicas, std::uint64_t seed);

}  // namespace franson::analysis
