#pragma once

#include <array>

#include "franson/model/model.h"
#include "franson/montecarlo/params.h"
#include "franson/rng.h"
#include "franson/units.h"

namespace franson::mc {

enum class Arm { kShort, kLong };

struct PhotonPath {
  Arm arm = Arm::kShort;
  model::Sign port = model::Sign::kPlus;
};

// Paths and output ports for the two photons of a split pair; index 0 is the
// photon at station 1.
struct PathPortSample {
  std::array<PhotonPath, 2> photons;

  bool interfering() const { return photons[0].arm == photons[1].arm; }
};

// Path pair uniform over {SS, LL, SL, LS}. SS and LL draw the port pair from
// the two-photon outcome distribution with visibility V * envelope; SL and LS
// draw ports independently and uniformly. This post-selection structure is
// what limits the all-peaks visibility to 50%.
PathPortSample sample_paths_and_ports(const model::PhaseSetting& phases,
                                      const model::SpectralParams& spectral,
                                      const model::VisibilityParams& vis,
                                      RngStream& rng);

// Same, with the outcome distribution precomputed for a fixed setting.
PathPortSample sample_paths_and_ports(const model::JointOutcome& joint,
                                      RngStream& rng);

// A photon whose partner is gone (lost or in the same fibre): uniform arm
// and port.
PhotonPath sample_single_path_and_port(RngStream& rng);

inline Picoseconds arm_delay_ps(Arm arm, const InterferometerParams& ifm) {
  return arm == Arm::kLong ? round_ps(ifm.arm_imbalance_ps)
                           : 0;
}

inline bool has_detector(const InterferometerParams& ifm, model::Sign port) {
  return port == model::Sign::kPlus ? ifm.detector_ports.plus
                                    : ifm.detector_ports.minus;
}

}  // namespace franson::mc
