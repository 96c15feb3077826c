#include "franson/montecarlo/fiber.h"

#include <cmath>

namespace franson::mc {

Picoseconds group_delay_ps(const FiberChannel& channel) {
  const double seconds =
      channel.length_km * 1e3 * channel.group_index / kSpeedOfLight_m_per_s;
  return round_ps(seconds * kPicosecondsPerSecond);
}

double dispersion_offset_ps(const FiberChannel& channel, double wavelength_nm,
                            const DispersionContext& ctx) {
  switch (channel.dispersion_mode) {
    case DispersionMode::kLumped: {
      if (ctx.detuning_sigma_nm <= 0.0) return 0.0;
      const double z = (wavelength_nm - ctx.pair_center_nm) / ctx.detuning_sigma_nm;
      return fwhm_to_sigma(channel.lumped_jitter_fwhm_ps) * z;
    }
    case DispersionMode::kAnalytic: {
      const double d = wavelength_nm - channel.zero_dispersion_wavelength_nm;
      return 0.5 * channel.dispersion_slope_ps_per_nm2_km * channel.length_km *
             d * d;
    }
  }
  return 0.0;
}

double mean_dispersion_offset_ps(const FiberChannel& channel,
                                 const DispersionContext& ctx) {
  if (channel.dispersion_mode == DispersionMode::kLumped) return 0.0;
  // E[(c +- D - z0)^2] = (c - z0)^2 + sigma^2 for D ~ N(0, sigma^2).
  const double offset = ctx.pair_center_nm - channel.zero_dispersion_wavelength_nm;
  const double s2 = ctx.detuning_sigma_nm * ctx.detuning_sigma_nm;
  return 0.5 * channel.dispersion_slope_ps_per_nm2_km * channel.length_km *
         (offset * offset + s2);
}

Picoseconds arrival_time_ps(const FiberChannel& channel,
                            const FiberPhoton& photon,
                            const DispersionContext& ctx) {
  return photon.emission_ps + group_delay_ps(channel) +
         round_ps(dispersion_offset_ps(channel, photon.wavelength_nm, ctx));
}

std::optional<Picoseconds> propagate(const FiberChannel& channel,
                                     const FiberPhoton& photon,
                                     const DispersionContext& ctx,
                                     RngStream& rng) {
  if (!rng.bernoulli(channel.transmittance())) return std::nullopt;
  return arrival_time_ps(channel, photon, ctx);
}

}  // namespace franson::mc
