#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "franson/model/model.h"
#include "franson/montecarlo/coincidence.h"
#include "franson/montecarlo/detector.h"
#include "franson/scenario.h"

namespace franson::mc {

// kThinned draws only pairs that leave at least one detectable photon, with
// the coupling, fibre and efficiency Bernoulli decisions taken up front. The
// superposition of independently thinned Poisson processes is again Poisson,
// so both modes sample the same distribution; kReference walks every pair
// through emit -> route -> propagate -> detect and is only practical at low
// rates.
enum class PipelineMode { kThinned, kReference };

struct StationTags {
  std::array<std::vector<TimeTag>, 2> station;  // [0] station 1, [1] station 2
};

// Detector-level tags at each station after chain jitter, merged over that
// station's detectors and sorted.
StationTags simulate_tags(const Scenario& scenario,
                          const model::PhaseSetting& phases, double duration_s,
                          std::uint64_t seed, std::uint64_t point_index,
                          PipelineMode mode = PipelineMode::kThinned);

// Delay the coincidence electronics subtract so equal-path pairs sit at 0.
Picoseconds compensation_delay_ps(const Scenario& scenario);

struct CountRecord {
  model::PhaseSetting phases;
  double duration_s = 0.0;
  std::uint64_t singles1 = 0;
  std::uint64_t singles2 = 0;
  std::uint64_t windowed_coincidences = 0;
  // Same conversions counted in the window shifted by accidental_delay.
  std::uint64_t offwindow_coincidences = 0;
  Histogram histogram;

  double phase_rad() const { return phases.phase_sum(); }
};

struct ScanOptions {
  double duration_per_point_s = 20.0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double histogram_bin_ps = 50.0;
  double histogram_span_ps = 4000.0;
  // Entity index of the first point; lets several scans share one seed
  // without reusing streams.
  std::uint64_t first_point_index = 0;
  PipelineMode mode = PipelineMode::kThinned;
};

CountRecord run_point(const Scenario& scenario,
                      const model::PhaseSetting& phases,
                      const ScanOptions& options, std::uint64_t point_index);

// One record per setting. Point i uses streams keyed by
// (seed, first_point_index + i), so the output is independent of worker
// count and evaluation order.
std::vector<CountRecord> run_scan(const Scenario& scenario,
                                  std::span<const model::PhaseSetting> settings,
                                  const ScanOptions& options);

// n settings sweeping delta2 uniformly over [0, 2 pi) with delta1 and the
// path mismatch taken from the scenario.
std::vector<model::PhaseSetting> delta2_sweep(const Scenario& scenario,
                                              std::size_t points);

// Coincidences in the window displaced by the accidental delay line, at the
// scenario's nominal phases.
std::uint64_t measure_accidentals(const Scenario& scenario, double duration_s,
                                  std::uint64_t seed);

}  // namespace franson::mc
