#include "franson/analysis/bell_report.h"

#include "franson/model/model.h"

namespace franson::analysis {

BellReport bell_report(const FringeFit& raw, const FringeFit& net,
                       double accidentals_per_interval) {
  BellReport r;
  r.raw_visibility = raw.visibility;
  r.raw_visibility_uncertainty = raw.visibility_uncertainty;
  r.net_visibility = net.visibility;
  r.net_visibility_uncertainty = net.visibility_uncertainty;
  r.accidentals_per_interval = accidentals_per_interval;
  r.threshold = model::kBellThreshold;
  r.sigma_violation =
      model::bell_violation_sigma(net.visibility, net.visibility_uncertainty);
  return r;
}

}  // namespace franson::analysis
