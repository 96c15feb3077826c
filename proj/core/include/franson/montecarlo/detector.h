#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "franson/montecarlo/params.h"
#include "franson/rng.h"
#include "franson/units.h"

namespace franson::mc {

enum class TagOrigin : std::uint8_t { kPhoton, kDark, kAfterpulse };

// One detector firing. Origin is kept for diagnostics only; nothing
// downstream of the detector looks at it.
struct TimeTag {
  Picoseconds time_ps = 0;
  std::uint8_t station = 1;
  std::uint8_t detector = 0;  // 0 = '+' port, 1 = '-' port
  TagOrigin origin = TagOrigin::kPhoton;
};

struct DetectorId {
  std::uint8_t station = 1;
  std::uint8_t detector = 0;
};

// Geiger-mode detector. Each arrival (sorted) is kept with probability
// `efficiency` and smeared by Gaussian jitter; an independent Poisson dark
// stream is merged; non-paralysable dead-time pruning leaves tags strictly
// increasing and at least dead_time apart. After each accepted tag an
// afterpulse fires with probability afterpulse_probability at
// dead_time + Exp(afterpulse_delay) later, unless a real event comes first.
std::vector<TimeTag> detect(const DetectorParams& det,
                            std::span<const Picoseconds> arrivals,
                            double duration_s, DetectorId id, RngStream& rng);

// Electronics timing noise added per tag; the result is re-sorted.
void apply_chain_jitter(std::vector<TimeTag>& tags, double fwhm_ps,
                        RngStream& rng);

}  // namespace franson::mc
