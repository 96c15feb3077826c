#pragma once

#include <optional>

#include "franson/montecarlo/params.h"
#include "franson/rng.h"
#include "franson/units.h"

namespace franson::mc {

// What the fibre needs to know about a photon.
struct FiberPhoton {
  Picoseconds emission_ps = 0;
  double wavelength_nm = 0.0;
};

// Spectral reference for the dispersion term: pair centre and the detuning
// sigma used to standardise lumped-mode offsets.
struct DispersionContext {
  double pair_center_nm = 1311.4;
  double detuning_sigma_nm = 0.0;
};

// length * group_index / c, rounded to whole picoseconds.
Picoseconds group_delay_ps(const FiberChannel& channel);

// Wavelength-dependent delay offset. Lumped: sigma_lumped * z with z the
// photon's standardised detuning, so the two photons of a pair get opposite
// offsets. Analytic: (slope / 2) * length * (lambda - lambda_zero)^2.
double dispersion_offset_ps(const FiberChannel& channel, double wavelength_nm,
                            const DispersionContext& ctx);

// Mean of dispersion_offset_ps over the detuning distribution.
double mean_dispersion_offset_ps(const FiberChannel& channel,
                                 const DispersionContext& ctx);

// Deterministic arrival time of a photon that survives the fibre.
Picoseconds arrival_time_ps(const FiberChannel& channel,
                            const FiberPhoton& photon,
                            const DispersionContext& ctx);

// Survival draw with probability 10^(-loss/10), then arrival_time_ps.
std::optional<Picoseconds> propagate(const FiberChannel& channel,
                                     const FiberPhoton& photon,
                                     const DispersionContext& ctx,
                                     RngStream& rng);

}  // namespace franson::mc
