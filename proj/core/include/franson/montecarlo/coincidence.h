#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "franson/montecarlo/detector.h"
#include "franson/montecarlo/params.h"
#include "franson/units.h"

namespace franson::mc {

// Start-stop converter. A start tag seen while the converter is idle opens a
// conversion; the first stop whose compensated difference lies inside the
// range completes it. The converter is busy for dead_time after every
// accepted start, whether or not a stop arrived. Differences are always
// reported as t2 - t1 - compensation regardless of which station starts.
struct TphcParams {
  double dead_time_ps = 0.0;
  double range_ps = 20000.0;
  int start_station = 1;
  // Fixed delay that the electronics remove so that equal-path pairs land
  // at zero (fibre and cable length difference).
  Picoseconds compensation_ps = 0;
};

TphcParams tphc_params(const ElectronicsParams& electronics,
                       Picoseconds compensation_ps);

std::vector<Picoseconds> tphc_conversions(std::span<const TimeTag> station1,
                                          std::span<const TimeTag> station2,
                                          const TphcParams& tphc);

struct Histogram {
  double bin_width_ps = 0.0;
  double span_ps = 0.0;
  std::vector<std::uint64_t> counts;

  double bin_center_ps(std::size_t i) const {
    return -span_ps + (static_cast<double>(i) + 0.5) * bin_width_ps;
  }
  std::uint64_t total() const;
  // Sum of bins whose centre lies in [lo, hi].
  std::uint64_t sum_between(double lo_ps, double hi_ps) const;
};

// Bins differences in [-span, span). Throws InvalidInputError for a
// non-positive bin width or span.
Histogram histogram_from_differences(std::span<const Picoseconds> differences,
                                     double bin_width_ps, double span_ps);

Histogram coincidence_histogram(std::span<const TimeTag> tags1,
                                std::span<const TimeTag> tags2,
                                double bin_width_ps, double span_ps,
                                const TphcParams& tphc);

// Number of differences with |d - center| <= window / 2.
std::uint64_t count_in_window(std::span<const Picoseconds> differences,
                              double window_ps, double center_ps);

std::uint64_t windowed_coincidences(std::span<const TimeTag> tags1,
                                    std::span<const TimeTag> tags2,
                                    const ElectronicsParams& electronics,
                                    Picoseconds compensation_ps,
                                    double window_center_ps);

}  // namespace franson::mc
