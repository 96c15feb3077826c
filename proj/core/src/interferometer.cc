#include "franson/montecarlo/interferometer.h"

#include <cmath>

namespace franson::mc {

namespace {

model::Sign uniform_port(RngStream& rng) {
  return rng.uniform() < 0.5 ? model::Sign::kPlus : model::Sign::kMinus;
}

}  // namespace

PathPortSample sample_paths_and_ports(const model::PhaseSetting& phases,
                                      const model::SpectralParams& spectral,
                                      const model::VisibilityParams& vis,
                                      RngStream& rng) {
  return sample_paths_and_ports(
      model::joint_outcome_distribution(phases, spectral, vis), rng);
}

PathPortSample sample_paths_and_ports(const model::JointOutcome& joint,
                                      RngStream& rng) {
  PathPortSample out;
  const auto path_pair = rng.next_u64() >> 62;  // 0..3, 1/4 each
  out.photons[0].arm = (path_pair & 1U) ? Arm::kLong : Arm::kShort;
  out.photons[1].arm = (path_pair & 2U) ? Arm::kLong : Arm::kShort;

  if (out.interfering()) {
    const double u = rng.uniform();
    double acc = joint.p[0][0];
    if (u < acc) {
      out.photons[0].port = model::Sign::kPlus;
      out.photons[1].port = model::Sign::kPlus;
    } else if (u < (acc += joint.p[0][1])) {
      out.photons[0].port = model::Sign::kPlus;
      out.photons[1].port = model::Sign::kMinus;
    } else if (u < (acc += joint.p[1][0])) {
      out.photons[0].port = model::Sign::kMinus;
      out.photons[1].port = model::Sign::kPlus;
    } else {
      out.photons[0].port = model::Sign::kMinus;
      out.photons[1].port = model::Sign::kMinus;
    }
  } else {
    out.photons[0].port = uniform_port(rng);
    out.photons[1].port = uniform_port(rng);
  }
  return out;
}

PhotonPath sample_single_path_and_port(RngStream& rng) {
  const auto bits = rng.next_u64() >> 62;
  return {(bits & 1U) ? Arm::kLong : Arm::kShort,
          (bits & 2U) ? model::Sign::kMinus : model::Sign::kPlus};
}

}  // namespace franson::mc
