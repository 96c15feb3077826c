#pragma once

#include <array>
#include <vector>

#include "franson/model/model.h"
#include "franson/montecarlo/params.h"
#include "franson/rng.h"
#include "franson/units.h"

namespace franson::mc {

// One down-converted pair. Photon a sits at center + detuning, photon b at
// center - detuning.
struct PairEvent {
  Picoseconds emission_ps = 0;
  double detuning_nm = 0.0;
  // Whether each photon was collected into the source fibre.
  std::array<bool, 2> coupled{true, true};
};

enum class Routing { kSplit, kBothToStation1, kBothToStation2 };

// Per-photon wavelength spread: sigma of the detuning whose marginal has the
// configured FWHM.
double detuning_sigma_nm(const model::SpectralParams& spectral);

// Poisson emission at source.pair_rate_hz over [0, duration).
std::vector<PairEvent> emit_pairs(const SourceParams& source,
                                  const model::SpectralParams& spectral,
                                  double duration_s, RngStream& rng);

Routing route_at_coupler(double split_probability, RngStream& rng);

// Arrival times of a homogeneous Poisson process on [0, duration).
std::vector<Picoseconds> poisson_times(double rate_hz, double duration_s,
                                       RngStream& rng);

}  // namespace franson::mc
