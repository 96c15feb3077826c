#include "franson/montecarlo/emission.h"

#include <cmath>

namespace franson::mc {

double detuning_sigma_nm(const model::SpectralParams& spectral) {
  return fwhm_to_sigma(spectral.bandwidth_fwhm_nm);
}

std::vector<PairEvent> emit_pairs(const SourceParams& source,
                                  const model::SpectralParams& spectral,
                                  double duration_s, RngStream& rng) {
  std::vector<PairEvent> out;
  if (!(source.pair_rate_hz > 0.0) || !(duration_s > 0.0)) return out;
  const double end_ps = duration_s * kPicosecondsPerSecond;
  const double mean_gap_ps = kPicosecondsPerSecond / source.pair_rate_hz;
  const double sigma = detuning_sigma_nm(spectral);
  out.reserve(static_cast<std::size_t>(source.pair_rate_hz * duration_s * 1.01) +
              16);
  double t = rng.exponential(mean_gap_ps);
  while (t < end_ps) {
    PairEvent ev;
    ev.emission_ps = round_ps(t);
    ev.detuning_nm = sigma * rng.normal();
    ev.coupled[0] = rng.bernoulli(source.pair_coupling_efficiency);
    ev.coupled[1] = rng.bernoulli(source.pair_coupling_efficiency);
    out.push_back(ev);
    t += rng.exponential(mean_gap_ps);
  }
  return out;
}

Routing route_at_coupler(double split_probability, RngStream& rng) {
  if (rng.uniform() < split_probability) return Routing::kSplit;
  return rng.uniform() < 0.5 ? Routing::kBothToStation1
                             : Routing::kBothToStation2;
}

std::vector<Picoseconds> poisson_times(double rate_hz, double duration_s,
                                       RngStream& rng) {
  std::vector<Picoseconds> out;
  if (!(rate_hz > 0.0) || !(duration_s > 0.0)) return out;
  const double end_ps = duration_s * kPicosecondsPerSecond;
  const double mean_gap_ps = kPicosecondsPerSecond / rate_hz;
  out.reserve(static_cast<std::size_t>(rate_hz * duration_s * 1.01) + 16);
  for (double t = rng.exponential(mean_gap_ps); t < end_ps;
       t += rng.exponential(mean_gap_ps)) {
    out.push_back(round_ps(t));
  }
  return out;
}

}  // namespace franson::mc
