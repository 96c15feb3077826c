#include "franson/montecarlo/engine.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "franson/montecarlo/emission.h"
#include "franson/montecarlo/fiber.h"
#include "franson/montecarlo/interferometer.h"
#include "franson/rng.h"
#include "nearly_sorted.h"

namespace franson::mc {

namespace {

constexpr std::uint64_t kAccidentalEntity = 0xACC1'D000'0000'0000ULL;

// Per-station, per-port arrival lists feeding the detectors.
using Arrivals = std::array<std::array<std::vector<Picoseconds>, 2>, 2>;

int port_index(model::Sign port) { return port == model::Sign::kPlus ? 0 : 1; }

struct PairContext {
  const Scenario& scenario;
  DispersionContext dispersion;
  Arrivals& arrivals;

  // Photon at `station` (0/1) with wavelength offset `sign * detuning`.
  void deliver(int station, Picoseconds emission_ps, double wavelength_nm,
               PhotonPath path) const {
    const auto& ifm = scenario.interferometers[station];
    if (!has_detector(ifm, path.port)) return;
    const Picoseconds t =
        arrival_time_ps(scenario.fibers[station], {emission_ps, wavelength_nm},
                        dispersion) +
        arm_delay_ps(path.arm, ifm);
    arrivals[station][port_index(path.port)].push_back(t);
  }
};

// Routes one pair whose surviving photons are known. alive[k] refers to
// photon a (k = 0, +detuning) and photon b (k = 1, -detuning).
void dispatch_pair(const PairContext& ctx, Routing routing,
                   Picoseconds emission_ps, double detuning_nm,
                   std::array<bool, 2> alive, const model::JointOutcome& joint,
                   RngStream& paths) {
  const double center = ctx.dispersion.pair_center_nm;
  const double lambda_a = center + detuning_nm;
  const double lambda_b = center - detuning_nm;
  switch (routing) {
    case Routing::kSplit: {
      if (alive[0] && alive[1]) {
        const auto sample = sample_paths_and_ports(joint, paths);
        ctx.deliver(0, emission_ps, lambda_a, sample.photons[0]);
        ctx.deliver(1, emission_ps, lambda_b, sample.photons[1]);
      } else if (alive[0]) {
        ctx.deliver(0, emission_ps, lambda_a, sample_single_path_and_port(paths));
      } else if (alive[1]) {
        ctx.deliver(1, emission_ps, lambda_b, sample_single_path_and_port(paths));
      }
      break;
    }
    case Routing::kBothToStation1:
    case Routing::kBothToStation2: {
      const int station = routing == Routing::kBothToStation1 ? 0 : 1;
      if (alive[0]) {
        ctx.deliver(station, emission_ps, lambda_a,
                    sample_single_path_and_port(paths));
      }
      if (alive[1]) {
        ctx.deliver(station, emission_ps, lambda_b,
                    sample_single_path_and_port(paths));
      }
      break;
    }
  }
}

void fill_thinned(const Scenario& sc, const model::JointOutcome& joint,
                  double duration_s, std::uint64_t seed, std::uint64_t point,
                  std::uint64_t sub, const PairContext& ctx) {
  const double zeta = sc.source.pair_coupling_efficiency;
  const std::array<double, 2> s = {
      zeta * sc.fibers[0].transmittance() * sc.detectors[0].efficiency,
      zeta * sc.fibers[1].transmittance() * sc.detectors[1].efficiency};
  const double p = sc.source.split_probability;
  auto visible = [](double x, double y) { return 1.0 - (1.0 - x) * (1.0 - y); };
  // Photon survival probabilities for (a, b) per routing class.
  const std::array<std::array<double, 2>, 3> survive = {
      {{s[0], s[1]}, {s[0], s[0]}, {s[1], s[1]}}};
  const std::array<double, 3> weight = {
      p * visible(s[0], s[1]), 0.5 * (1.0 - p) * visible(s[0], s[0]),
      0.5 * (1.0 - p) * visible(s[1], s[1])};
  const double total = weight[0] + weight[1] + weight[2];
  const double rate = sc.source.pair_rate_hz * total;
  if (!(rate > 0.0) || !(duration_s > 0.0)) return;

  RngStream emission(seed, StreamTag::kEmission, point, sub);
  RngStream coupler(seed, StreamTag::kCoupler, point, sub);
  RngStream paths(seed, StreamTag::kInterferometer, point, sub);
  const double sigma = ctx.dispersion.detuning_sigma_nm;
  const double end_ps = duration_s * kPicosecondsPerSecond;
  const double mean_gap_ps = kPicosecondsPerSecond / rate;
  const double c0 = weight[0] / total;
  const double c1 = (weight[0] + weight[1]) / total;

  for (double t = emission.exponential(mean_gap_ps); t < end_ps;
       t += emission.exponential(mean_gap_ps)) {
    const double detuning = sigma * emission.normal();
    const double u = coupler.uniform();
    const int cls = u < c0 ? 0 : (u < c1 ? 1 : 2);
    const double sa = survive[cls][0];
    const double sb = survive[cls][1];
    // Survival pattern conditioned on at least one survivor.
    const double v = coupler.uniform() * visible(sa, sb);
    std::array<bool, 2> alive;
    if (v < sa * sb) {
      alive = {true, true};
    } else if (v < sa * sb + sa * (1.0 - sb)) {
      alive = {true, false};
    } else {
      alive = {false, true};
    }
    const Routing routing = cls == 0   ? Routing::kSplit
                            : cls == 1 ? Routing::kBothToStation1
                                       : Routing::kBothToStation2;
    dispatch_pair(ctx, routing, round_ps(t), detuning, alive, joint, paths);
  }
}

void fill_reference(const Scenario& sc, const model::JointOutcome& joint,
                    double duration_s, std::uint64_t seed, std::uint64_t point,
                    std::uint64_t sub, const PairContext& ctx) {
  RngStream emission(seed, StreamTag::kEmission, point, sub);
  RngStream coupler(seed, StreamTag::kCoupler, point, sub);
  RngStream paths(seed, StreamTag::kInterferometer, point, sub);
  std::array<RngStream, 2> fiber_rng = {RngStream(seed, StreamTag::kFiber, point, sub),
                                        RngStream(seed, StreamTag::kFiber, point, sub + 1)};
  const auto pairs = emit_pairs(sc.source, sc.spectral, duration_s, emission);
  const double center = ctx.dispersion.pair_center_nm;
  for (const auto& pair : pairs) {
    const Routing routing = route_at_coupler(sc.source.split_probability, coupler);
    const std::array<int, 2> station =
        routing == Routing::kSplit            ? std::array<int, 2>{0, 1}
        : routing == Routing::kBothToStation1 ? std::array<int, 2>{0, 0}
                                              : std::array<int, 2>{1, 1};
    const std::array<double, 2> lambda = {center + pair.detuning_nm,
                                          center - pair.detuning_nm};
    std::array<bool, 2> alive{};
    for (int k = 0; k < 2; ++k) {
      if (!pair.coupled[k]) continue;
      alive[k] = propagate(sc.fibers[station[k]], {pair.emission_ps, lambda[k]},
                           ctx.dispersion, fiber_rng[station[k]])
                     .has_value();
    }
    dispatch_pair(ctx, routing, pair.emission_ps, pair.detuning_nm, alive, joint,
                  paths);
  }
}

}  // namespace

Picoseconds compensation_delay_ps(const Scenario& sc) {
  const DispersionContext ctx{sc.source.pair_center_wavelength_nm(),
                              detuning_sigma_nm(sc.spectral)};
  const double mean_disp = mean_dispersion_offset_ps(sc.fibers[1], ctx) -
                           mean_dispersion_offset_ps(sc.fibers[0], ctx);
  return group_delay_ps(sc.fibers[1]) - group_delay_ps(sc.fibers[0]) +
         round_ps(mean_disp);
}

namespace {

// Slice k of a run draws from sub-streams k * kSubStride + local index.
constexpr std::uint64_t kSubStride = 8;
// Long runs are simulated as independent slices so memory stays bounded. Only
// the detector and converter state is reset at a boundary.
constexpr double kSliceSeconds = 1.0;

StationTags simulate_slice(const Scenario& sc, const model::JointOutcome& joint,
                           double duration_s, std::uint64_t seed,
                           std::uint64_t point_index, std::uint64_t slice,
                           PipelineMode mode) {
  const std::uint64_t sub = slice * kSubStride;
  Arrivals arrivals;
  const PairContext ctx{
      sc, {sc.source.pair_center_wavelength_nm(), detuning_sigma_nm(sc.spectral)},
      arrivals};
  if (mode == PipelineMode::kThinned) {
    fill_thinned(sc, joint, duration_s, seed, point_index, sub, ctx);
  } else {
    fill_reference(sc, joint, duration_s, seed, point_index, sub, ctx);
  }

  StationTags out;
  for (int k = 0; k < 2; ++k) {
    DetectorParams det = sc.detectors[k];
    // Efficiency was already applied while thinning.
    if (mode == PipelineMode::kThinned) det.efficiency = 1.0;
    auto& merged = out.station[k];
    for (int d = 0; d < 2; ++d) {
      const auto port = d == 0 ? model::Sign::kPlus : model::Sign::kMinus;
      if (!has_detector(sc.interferometers[k], port)) continue;
      auto& list = arrivals[k][d];
      detail::sort_nearly_sorted(list.begin(), list.end());
      RngStream det_rng(seed, StreamTag::kDetector, point_index,
                        sub + static_cast<std::uint64_t>(2 * k + d));
      RngStream chain_rng(seed, StreamTag::kElectronics, point_index,
                          sub + static_cast<std::uint64_t>(2 * k + d));
      auto tags = detect(det, list, duration_s,
                         {static_cast<std::uint8_t>(k + 1),
                          static_cast<std::uint8_t>(d)},
                         det_rng);
      apply_chain_jitter(tags, sc.electronics.chain_jitter_fwhm_ps, chain_rng);
      if (merged.empty()) {
        merged = std::move(tags);
      } else {
        std::vector<TimeTag> both;
        both.reserve(merged.size() + tags.size());
        std::merge(merged.begin(), merged.end(), tags.begin(), tags.end(),
                   std::back_inserter(both),
                   [](const TimeTag& a, const TimeTag& b) {
                     return a.time_ps < b.time_ps;
                   });
        merged = std::move(both);
      }
    }
  }
  return out;
}

struct SliceCounts {
  std::uint64_t singles[2] = {0, 0};
  std::uint64_t windowed = 0;
  std::uint64_t offwindow = 0;
};

// Runs `duration_s` in slices and hands each slice's conversions to `sink`.
template <typename Sink>
SliceCounts run_sliced(const Scenario& sc, const model::PhaseSetting& phases,
                       double duration_s, std::uint64_t seed,
                       std::uint64_t entity, PipelineMode mode, Sink&& sink) {
  const auto joint =
      model::joint_outcome_distribution(phases, sc.spectral, sc.visibility);
  const auto tphc = tphc_params(sc.electronics, compensation_delay_ps(sc));
  const double offset_ps = sc.electronics.accidental_delay_ns * 1e3;
  SliceCounts counts;
  const auto slices = static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(duration_s / kSliceSeconds - 1e-9)));
  for (std::uint64_t k = 0; k < slices; ++k) {
    const double length =
        std::min(kSliceSeconds, duration_s - static_cast<double>(k) * kSliceSeconds);
    if (!(length > 0.0)) break;
    const auto tags = simulate_slice(sc, joint, length, seed, entity, k, mode);
    const auto diffs = tphc_conversions(tags.station[0], tags.station[1], tphc);
    counts.singles[0] += tags.station[0].size();
    counts.singles[1] += tags.station[1].size();
    counts.windowed += count_in_window(diffs, sc.electronics.window_ps, 0.0);
    counts.offwindow += count_in_window(diffs, sc.electronics.window_ps, offset_ps);
    sink(diffs);
  }
  return counts;
}

}  // namespace

StationTags simulate_tags(const Scenario& sc, const model::PhaseSetting& phases,
                          double duration_s, std::uint64_t seed,
                          std::uint64_t point_index, PipelineMode mode) {
  const auto joint =
      model::joint_outcome_distribution(phases, sc.spectral, sc.visibility);
  return simulate_slice(sc, joint, duration_s, seed, point_index, 0, mode);
}

CountRecord run_point(const Scenario& sc, const model::PhaseSetting& phases,
                      const ScanOptions& options, std::uint64_t point_index) {
  CountRecord rec;
  rec.phases = phases;
  rec.duration_s = options.duration_per_point_s;
  rec.histogram = histogram_from_differences({}, options.histogram_bin_ps,
                                             options.histogram_span_ps);
  const auto counts = run_sliced(
      sc, phases, options.duration_per_point_s, options.seed, point_index,
      options.mode, [&](std::span<const Picoseconds> diffs) {
        const auto part = histogram_from_differences(
            diffs, options.histogram_bin_ps, options.histogram_span_ps);
        for (std::size_t i = 0; i < part.counts.size(); ++i) {
          rec.histogram.counts[i] += part.counts[i];
        }
      });
  rec.singles1 = counts.singles[0];
  rec.singles2 = counts.singles[1];
  rec.windowed_coincidences = counts.windowed;
  rec.offwindow_coincidences = counts.offwindow;
  return rec;
}

std::vector<CountRecord> run_scan(const Scenario& sc,
                                  std::span<const model::PhaseSetting> settings,
                                  const ScanOptions& options) {
  validate(sc);
  std::vector<CountRecord> out(settings.size());
  if (settings.empty()) return out;

  const unsigned workers = std::clamp<unsigned>(
      options.workers, 1, static_cast<unsigned>(settings.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < settings.size(); i = next++) {
      try {
        out[i] = run_point(sc, settings[i], options, options.first_point_index + i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<model::PhaseSetting> delta2_sweep(const Scenario& sc,
                                              std::size_t points) {
  std::vector<model::PhaseSetting> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    model::PhaseSetting p = sc.nominal_phases();
    p.delta2_rad = 2.0 * std::numbers::pi * static_cast<double>(i) /
                   static_cast<double>(points);
    out.push_back(p);
  }
  return out;
}

std::uint64_t measure_accidentals(const Scenario& sc, double duration_s,
                                  std::uint64_t seed) {
  validate(sc);
  return run_sliced(sc, sc.nominal_phases(), duration_s, seed, kAccidentalEntity,
                    PipelineMode::kThinned, [](std::span<const Picoseconds>) {})
      .offwindow;
}

}  // namespace franson::mc
