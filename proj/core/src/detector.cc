#include "franson/montecarlo/detector.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "franson/montecarlo/emission.h"
#include "nearly_sorted.h"

namespace franson::mc {

namespace {

struct Candidate {
  Picoseconds time_ps;
  TagOrigin origin;
};

bool by_time(const Candidate& a, const Candidate& b) {
  return a.time_ps < b.time_ps;
}

}  // namespace

std::vector<TimeTag> detect(const DetectorParams& det,
                            std::span<const Picoseconds> arrivals,
                            double duration_s, DetectorId id, RngStream& rng) {
  const double sigma = fwhm_to_sigma(det.jitter_fwhm_ps);

  std::vector<Candidate> photons;
  photons.reserve(arrivals.size());
  for (const Picoseconds t : arrivals) {
    if (!rng.bernoulli(det.efficiency)) continue;
    const double jitter = sigma > 0.0 ? sigma * rng.normal() : 0.0;
    photons.push_back({t + round_ps(jitter), TagOrigin::kPhoton});
  }
  detail::sort_nearly_sorted(photons.begin(), photons.end(), by_time);

  const auto dark_times = poisson_times(det.dark_rate_hz, duration_s, rng);
  std::vector<Candidate> candidates;
  candidates.reserve(photons.size() + dark_times.size());
  {
    auto p = photons.begin();
    auto d = dark_times.begin();
    while (p != photons.end() || d != dark_times.end()) {
      if (d == dark_times.end() || (p != photons.end() && p->time_ps <= *d)) {
        candidates.push_back(*p++);
      } else {
        candidates.push_back({*d++, TagOrigin::kDark});
      }
    }
  }

  const auto dead_ps = round_ps(det.dead_time_ns * 1e3);
  const double afterpulse_mean_ps = det.afterpulse_delay_ns * 1e3;
  constexpr Picoseconds kNone = std::numeric_limits<Picoseconds>::max();

  std::vector<TimeTag> tags;
  tags.reserve(candidates.size());
  Picoseconds pending_afterpulse = kNone;
  bool have_last = false;
  Picoseconds last = 0;

  auto accept = [&](Picoseconds t, TagOrigin origin) {
    tags.push_back({t, id.station, id.detector, origin});
    have_last = true;
    last = t;
    pending_afterpulse = kNone;
    if (det.afterpulse_probability > 0.0 &&
        rng.bernoulli(det.afterpulse_probability)) {
      pending_afterpulse =
          t + std::max<Picoseconds>(dead_ps, 1) +
          round_ps(rng.exponential(std::max(afterpulse_mean_ps, 0.0)));
    }
  };
  auto live_at = [&](Picoseconds t) {
    return !have_last || (t > last && t - last >= dead_ps);
  };

  for (const auto& c : candidates) {
    while (pending_afterpulse != kNone && pending_afterpulse <= c.time_ps) {
      accept(pending_afterpulse, TagOrigin::kAfterpulse);
    }
    if (live_at(c.time_ps)) accept(c.time_ps, c.origin);
  }
  while (pending_afterpulse != kNone) {
    accept(pending_afterpulse, TagOrigin::kAfterpulse);
  }
  return tags;
}

void apply_chain_jitter(std::vector<TimeTag>& tags, double fwhm_ps,
                        RngStream& rng) {
  const double sigma = fwhm_to_sigma(fwhm_ps);
  if (sigma <= 0.0) return;
  for (auto& tag : tags) tag.time_ps += round_ps(sigma * rng.normal());
  auto earlier = [](const TimeTag& a, const TimeTag& b) {
    return a.time_ps < b.time_ps;
  };
  detail::sort_nearly_sorted(tags.begin(), tags.end(), earlier);
}

}  // namespace franson::mc
