#include "franson/montecarlo/calibration.h"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "franson/error.h"
#include "franson/montecarlo/emission.h"
#include "franson/montecarlo/fiber.h"
#include "franson/units.h"

namespace franson::mc {

namespace {

double differential_dispersion_sigma_ps(const Scenario& sc) {
  const DispersionContext ctx{sc.source.pair_center_wavelength_nm(),
                              detuning_sigma_nm(sc.spectral)};
  const auto& f1 = sc.fibers[0];
  const auto& f2 = sc.fibers[1];
  if (f1.dispersion_mode == DispersionMode::kLumped &&
      f2.dispersion_mode == DispersionMode::kLumped) {
    // Opposite detunings give opposite offsets; the spreads add linearly.
    return fwhm_to_sigma(f1.lumped_jitter_fwhm_ps) +
           fwhm_to_sigma(f2.lumped_jitter_fwhm_ps);
  }
  // Variance of offset2(center - D) - offset1(center + D) over the Gaussian
  // detuning, by trapezoidal quadrature.
  const double sigma = ctx.detuning_sigma_nm;
  if (sigma <= 0.0) return 0.0;
  constexpr int kSteps = 800;
  const double lo = -8.0 * sigma;
  const double h = 16.0 * sigma / kSteps;
  double w_sum = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (int i = 0; i <= kSteps; ++i) {
    const double d = lo + h * i;
    const double w = std::exp(-0.5 * (d / sigma) * (d / sigma)) *
                     ((i == 0 || i == kSteps) ? 0.5 : 1.0);
    const double diff =
        dispersion_offset_ps(f2, ctx.pair_center_nm - d, ctx) -
        dispersion_offset_ps(f1, ctx.pair_center_nm + d, ctx);
    w_sum += w;
    m1 += w * diff;
    m2 += w * diff * diff;
  }
  m1 /= w_sum;
  m2 /= w_sum;
  return std::sqrt(std::max(m2 - m1 * m1, 0.0));
}

struct DetectorRates {
  double incident_hz;  // photons + dark, before dead time
  double registered_hz;
  double live_fraction;
};

DetectorRates detector_rates(const DetectorParams& det, double photon_hz) {
  const double incident = det.dark_rate_hz + photon_hz;
  const double dead_s = det.dead_time_ns * 1e-9;
  const double live = 1.0 / (1.0 + incident * dead_s);
  // Afterpulses are approximated as a proportional excess.
  return {incident, incident * live * (1.0 + det.afterpulse_probability), live};
}

}  // namespace

RatePrediction predict_rates(const Scenario& sc) {
  RatePrediction out;
  const double p = sc.source.split_probability;
  const double zeta = sc.source.pair_coupling_efficiency;
  const double collected = sc.source.pair_rate_hz * zeta;

  std::array<std::array<DetectorRates, 2>, 2> rates{};
  for (int k = 0; k < 2; ++k) {
    // Every pair sends on average one photon into each output fibre
    // (p split + 2 * (1 - p) / 2 unsplit); each port receives half.
    const double per_port = collected * sc.fibers[k].transmittance() *
                            sc.detectors[k].efficiency * 0.5;
    const auto& ports = sc.interferometers[k].detector_ports;
    for (int d = 0; d < 2; ++d) {
      const bool present = d == 0 ? ports.plus : ports.minus;
      if (!present) continue;
      rates[k][d] = detector_rates(sc.detectors[k], per_port);
      out.photon_rate_hz[k] += per_port;
      out.singles_hz[k] += rates[k][d].registered_hz;
    }
  }

  double var = std::pow(differential_dispersion_sigma_ps(sc), 2);
  for (int k = 0; k < 2; ++k) {
    var += std::pow(fwhm_to_sigma(sc.detectors[k].jitter_fwhm_ps), 2) +
           std::pow(fwhm_to_sigma(sc.electronics.chain_jitter_fwhm_ps), 2);
  }
  out.difference_sigma_ps = std::sqrt(var);
  const double half_window = sc.electronics.window_ps / 2.0;
  out.window_fraction =
      out.difference_sigma_ps > 0.0
          ? std::erf(half_window / (out.difference_sigma_ps * std::numbers::sqrt2))
          : 1.0;

  const int start = sc.electronics.start_station - 1;
  const int stop = 1 - start;
  const double tphc_dead_s = sc.electronics.tphc_dead_time_us * 1e-6;
  // After the converter frees up, the next start waits for the next incident
  // event, plus the rest of a detector dead period if one is running.
  double incident = 0.0;
  double residual_dead_s = 0.0;
  int start_detectors = 0;
  for (int d = 0; d < 2; ++d) {
    if (rates[start][d].incident_hz <= 0.0) continue;
    const double tau = sc.detectors[start].dead_time_ns * 1e-9;
    incident += rates[start][d].incident_hz;
    residual_dead_s += rates[start][d].registered_hz * tau * tau / 2.0;
    ++start_detectors;
  }
  const double start_dead_s = sc.detectors[start].dead_time_ns * 1e-9;
  if (out.singles_hz[start] <= 0.0 || incident <= 0.0) {
    out.tphc_live_fraction = 1.0;
  } else if (start_detectors == 1 && tphc_dead_s <= start_dead_s) {
    out.tphc_live_fraction = 1.0;
  } else {
    const double accepted = 1.0 / (tphc_dead_s + 1.0 / incident + residual_dead_s);
    out.tphc_live_fraction = std::min(1.0, accepted / out.singles_hz[start]);
  }

  // Split pairs with both photons delivered, interfering half of the path
  // pairs, port pair probability 1/4 on average for each detector pair.
  const double both_delivered = sc.source.pair_rate_hz * zeta * zeta * p *
                                sc.fibers[0].transmittance() *
                                sc.fibers[1].transmittance() *
                                sc.detectors[0].efficiency *
                                sc.detectors[1].efficiency;
  double detector_pairs = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (rates[0][i].live_fraction > 0.0 && rates[1][j].live_fraction > 0.0) {
        detector_pairs += 0.25 * rates[0][i].live_fraction *
                          rates[1][j].live_fraction;
      }
    }
  }
  out.true_coincidences_hz = both_delivered * 0.5 * detector_pairs *
                             out.window_fraction * out.tphc_live_fraction;
  out.accidentals_hz = out.singles_hz[start] * out.tphc_live_fraction *
                       out.singles_hz[stop] * sc.electronics.window_ps * 1e-12;
  return out;
}

CalibrationResult calibrate(const Scenario& scenario,
                            const CalibrationTargets& targets) {
  if (!(targets.net_visibility > targets.raw_visibility) ||
      !(targets.raw_visibility > 0.0)) {
    throw ValidationError("calibration",
                          "targets need 0 < raw visibility < net visibility");
  }
  Scenario sc = scenario;
  sc.source.pair_coupling_efficiency = 1.0;

  auto singles_error = [&](double collected) {
    sc.source.pair_rate_hz = collected;
    const auto pred = predict_rates(sc);
    double err = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double r = pred.singles_hz[k] / targets.singles_hz[k] - 1.0;
      err += r * r;
    }
    return err;
  };
  double upper = 1.0;
  for (int k = 0; k < 2; ++k) {
    const double per_photon = sc.fibers[k].transmittance() *
                              sc.detectors[k].efficiency * 0.5 *
                              sc.interferometers[k].detector_ports.count();
    if (per_photon > 0.0) {
      upper = std::max(upper, 100.0 * targets.singles_hz[k] / per_photon);
    }
  }
  const auto [collected, residual] =
      boost::math::tools::brent_find_minima(singles_error, 0.0, upper, 52);
  (void)residual;

  sc.source.pair_rate_hz = collected;
  const auto base = predict_rates(sc);
  const double target_true = base.accidentals_hz * targets.raw_visibility /
                             (targets.net_visibility - targets.raw_visibility);
  // With efficiency e and collected flux x fixed, true coincidences scale as
  // x * e; base was computed at e = 1.
  const double efficiency = target_true / base.true_coincidences_hz;
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    std::ostringstream msg;
    msg << "required pair coupling efficiency " << efficiency
        << " is outside (0, 1]";
    throw ValidationError("source.pair_coupling_efficiency", msg.str());
  }

  CalibrationResult result;
  result.pair_coupling_efficiency = efficiency;
  result.pair_rate_hz = collected / efficiency;
  Scenario calibrated = apply_calibration(scenario, result);
  result.predicted = predict_rates(calibrated);
  return result;
}

Scenario apply_calibration(Scenario scenario, const CalibrationResult& result) {
  scenario.source.pair_rate_hz = result.pair_rate_hz;
  scenario.source.pair_coupling_efficiency = result.pair_coupling_efficiency;
  return scenario;
}

}  // namespace franson::mc
