#pragma once

#include "franson/analysis/fringe_fit.h"

namespace franson::analysis {

struct BellReport {
  double raw_visibility = 0.0;
  double raw_visibility_uncertainty = 0.0;
  double net_visibility = 0.0;
  double net_visibility_uncertainty = 0.0;
  double accidentals_per_interval = 0.0;
  double threshold = 0.0;
  // Standard deviations by which the net visibility exceeds the threshold.
  double sigma_violation = 0.0;

  bool violates() const { return sigma_violation > 0.0; }
};

BellReport bell_report(const FringeFit& raw, const FringeFit& net,
                       double accidentals_per_interval);

}  // namespace franson::analysis
