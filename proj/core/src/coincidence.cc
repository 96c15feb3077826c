#include "franson/montecarlo/coincidence.h"

#include <cmath>
#include <numeric>

#include "franson/error.h"

namespace franson::mc {

TphcParams tphc_params(const ElectronicsParams& electronics,
                       Picoseconds compensation_ps) {
  TphcParams p;
  p.dead_time_ps = electronics.tphc_dead_time_us * 1e6;
  p.range_ps = electronics.tphc_range_ps;
  p.start_station = electronics.start_station;
  p.compensation_ps = compensation_ps;
  return p;
}

std::vector<Picoseconds> tphc_conversions(std::span<const TimeTag> station1,
                                          std::span<const TimeTag> station2,
                                          const TphcParams& tphc) {
  const bool start_is_1 = tphc.start_station == 1;
  const auto starts = start_is_1 ? station1 : station2;
  const auto stops = start_is_1 ? station2 : station1;
  const auto half = round_ps(tphc.range_ps / 2.0);
  const auto dead = round_ps(tphc.dead_time_ps);
  // Stop time equivalent to zero difference for a start at t.
  const Picoseconds shift = start_is_1 ? tphc.compensation_ps : -tphc.compensation_ps;

  std::vector<Picoseconds> out;
  std::size_t j = 0;
  bool busy = false;
  Picoseconds busy_until = 0;
  for (const auto& start : starts) {
    if (busy && start.time_ps < busy_until) continue;
    busy = true;
    busy_until = start.time_ps + dead;
    const Picoseconds zero = start.time_ps + shift;
    const Picoseconds lo = zero - half;
    const Picoseconds hi = zero + half;
    while (j < stops.size() && stops[j].time_ps < lo) ++j;
    if (j < stops.size() && stops[j].time_ps <= hi) {
      const Picoseconds t1 = start_is_1 ? start.time_ps : stops[j].time_ps;
      const Picoseconds t2 = start_is_1 ? stops[j].time_ps : start.time_ps;
      out.push_back(t2 - t1 - tphc.compensation_ps);
    }
  }
  return out;
}

std::uint64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t Histogram::sum_between(double lo_ps, double hi_ps) const {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double c = bin_center_ps(i);
    if (c >= lo_ps && c <= hi_ps) sum += counts[i];
  }
  return sum;
}

Histogram histogram_from_differences(std::span<const Picoseconds> differences,
                                     double bin_width_ps, double span_ps) {
  if (!(bin_width_ps > 0.0)) {
    throw InvalidInputError("histogram bin width must be > 0");
  }
  if (!(span_ps > 0.0)) {
    throw InvalidInputError("histogram span must be > 0");
  }
  Histogram h;
  h.bin_width_ps = bin_width_ps;
  h.span_ps = span_ps;
  h.counts.assign(static_cast<std::size_t>(std::ceil(2.0 * span_ps / bin_width_ps)),
                  0);
  for (const Picoseconds d : differences) {
    const double x = static_cast<double>(d) + span_ps;
    if (x < 0.0 || d >= span_ps) continue;
    const auto bin = static_cast<std::size_t>(x / bin_width_ps);
    if (bin < h.counts.size()) ++h.counts[bin];
  }
  return h;
}

Histogram coincidence_histogram(std::span<const TimeTag> tags1,
                                std::span<const TimeTag> tags2,
                                double bin_width_ps, double span_ps,
                                const TphcParams& tphc) {
  if (!(bin_width_ps > 0.0)) {
    throw InvalidInputError("histogram bin width must be > 0");
  }
  const auto diffs = tphc_conversions(tags1, tags2, tphc);
  return histogram_from_differences(diffs, bin_width_ps, span_ps);
}

std::uint64_t count_in_window(std::span<const Picoseconds> differences,
                              double window_ps, double center_ps) {
  const double half = window_ps / 2.0;
  std::uint64_t n = 0;
  for (const Picoseconds d : differences) {
    if (std::abs(static_cast<double>(d) - center_ps) <= half) ++n;
  }
  return n;
}

std::uint64_t windowed_coincidences(std::span<const TimeTag> tags1,
                                    std::span<const TimeTag> tags2,
                                    const ElectronicsParams& electronics,
                                    Picoseconds compensation_ps,
                                    double window_center_ps) {
  const auto diffs =
      tphc_conversions(tags1, tags2, tphc_params(electronics, compensation_ps));
  return count_in_window(diffs, electronics.window_ps, window_center_ps);
}

}  // namespace franson::mc
