#include "franson/montecarlo/params.h"

#include <cmath>
#include <sstream>
#include <string>

#include "franson/error.h"
#include "franson/units.h"

namespace franson::mc {

namespace {

[[noreturn]] void fail(std::string_view prefix, std::string_view key,
                       std::string_view type_field, std::string_view constraint,
                       double got) {
  std::ostringstream msg;
  msg << type_field << " " << constraint << " (got " << got << ")";
  throw ValidationError(std::string(prefix) + "." + std::string(key), msg.str());
}

void require(bool ok, std::string_view prefix, std::string_view key,
             std::string_view type_field, std::string_view constraint,
             double got) {
  if (!ok || std::isnan(got)) fail(prefix, key, type_field, constraint, got);
}

}  // namespace

DispersionMode parse_dispersion_mode(std::string_view name) {
  if (name == "lumped") return DispersionMode::kLumped;
  if (name == "analytic") return DispersionMode::kAnalytic;
  throw InvalidInputError("unknown dispersion mode '" + std::string(name) +
                          "' (expected lumped or analytic)");
}

std::string_view to_string(DispersionMode mode) {
  return mode == DispersionMode::kLumped ? "lumped" : "analytic";
}

DetectorPorts parse_detector_ports(std::string_view text) {
  if (text == "+") return {true, false};
  if (text == "-") return {false, true};
  if (text == "+-" || text == "-+") return {true, true};
  throw InvalidInputError("detector ports must be one of '+', '-', '+-' (got '" +
                          std::string(text) + "')");
}

std::string_view to_string(DetectorPorts ports) {
  if (ports.plus && ports.minus) return "+-";
  if (ports.minus) return "-";
  return "+";
}

double FiberChannel::transmittance() const {
  return db_to_transmittance(loss_db);
}

void validate(const SourceParams& s, std::string_view prefix) {
  require(s.pair_rate_hz >= 0.0 && std::isfinite(s.pair_rate_hz), prefix,
          "pair_rate_hz", "SourceParams.pair_rate", "must be >= 0",
          s.pair_rate_hz);
  require(s.pump_wavelength_nm > 0.0, prefix, "pump_wavelength_nm",
          "SourceParams.pump_wavelength", "must be > 0", s.pump_wavelength_nm);
  require(s.split_probability >= 0.0 && s.split_probability <= 1.0, prefix,
          "split_probability", "SourceParams.split_probability",
          "must lie in [0, 1]", s.split_probability);
  require(s.pair_coupling_efficiency > 0.0 && s.pair_coupling_efficiency <= 1.0,
          prefix, "pair_coupling_efficiency",
          "SourceParams.pair_coupling_efficiency", "must lie in (0, 1]",
          s.pair_coupling_efficiency);
}

void validate(const FiberChannel& f, std::string_view prefix) {
  require(f.length_km >= 0.0 && std::isfinite(f.length_km), prefix,
          "length_km", "FiberChannel.length", "must be >= 0", f.length_km);
  // +inf is allowed and means no photon survives.
  require(f.loss_db >= 0.0, prefix, "loss_db", "FiberChannel.loss",
          "must be >= 0", f.loss_db);
  require(f.group_index >= 1.0 && std::isfinite(f.group_index), prefix,
          "group_index", "FiberChannel.group_index", "must be >= 1",
          f.group_index);
  require(f.lumped_jitter_fwhm_ps >= 0.0 && std::isfinite(f.lumped_jitter_fwhm_ps),
          prefix, "lumped_jitter_fwhm_ps", "FiberChannel.lumped_jitter_fwhm",
          "must be >= 0", f.lumped_jitter_fwhm_ps);
  require(std::isfinite(f.dispersion_slope_ps_per_nm2_km), prefix,
          "dispersion_slope_ps_per_nm2_km", "FiberChannel.dispersion_slope",
          "must be finite", f.dispersion_slope_ps_per_nm2_km);
  require(f.zero_dispersion_wavelength_nm > 0.0, prefix,
          "zero_dispersion_wavelength_nm",
          "FiberChannel.zero_dispersion_wavelength", "must be > 0",
          f.zero_dispersion_wavelength_nm);
}

void validate(const InterferometerParams& i, std::string_view prefix) {
  require(std::isfinite(i.phase_rad), prefix, "phase_rad",
          "InterferometerParams.phase", "must be finite", i.phase_rad);
  require(i.arm_imbalance_ps > 0.0 && std::isfinite(i.arm_imbalance_ps), prefix,
          "arm_imbalance_ps", "InterferometerParams.arm_imbalance_delay",
          "must be > 0", i.arm_imbalance_ps);
  require(std::isfinite(i.path_offset_um), prefix, "path_offset_um",
          "InterferometerParams.path_offset", "must be finite",
          i.path_offset_um);
  if (i.detector_ports.count() == 0) {
    throw ValidationError(std::string(prefix) + ".detector_ports",
                          "InterferometerParams.detector_port_map must name at "
                          "least one port");
  }
}

void validate(const DetectorParams& d, std::string_view prefix) {
  require(d.efficiency >= 0.0 && d.efficiency <= 1.0, prefix, "efficiency",
          "DetectorParams.efficiency", "must lie in [0, 1]", d.efficiency);
  require(d.dark_rate_hz >= 0.0 && std::isfinite(d.dark_rate_hz), prefix,
          "dark_rate_hz", "DetectorParams.dark_rate", "must be >= 0",
          d.dark_rate_hz);
  require(d.jitter_fwhm_ps >= 0.0 && std::isfinite(d.jitter_fwhm_ps), prefix,
          "jitter_fwhm_ps", "DetectorParams.jitter_fwhm", "must be >= 0",
          d.jitter_fwhm_ps);
  require(d.dead_time_ns >= 0.0 && std::isfinite(d.dead_time_ns), prefix,
          "dead_time_ns", "DetectorParams.dead_time", "must be >= 0",
          d.dead_time_ns);
  require(d.afterpulse_probability >= 0.0 && d.afterpulse_probability < 1.0,
          prefix, "afterpulse_probability",
          "DetectorParams.afterpulse_probability", "must lie in [0, 1)",
          d.afterpulse_probability);
  require(d.afterpulse_delay_ns >= 0.0 && std::isfinite(d.afterpulse_delay_ns),
          prefix, "afterpulse_delay_ns", "DetectorParams.afterpulse_delay",
          "must be >= 0", d.afterpulse_delay_ns);
}

void validate(const ElectronicsParams& e, std::string_view prefix) {
  require(e.chain_jitter_fwhm_ps >= 0.0 && std::isfinite(e.chain_jitter_fwhm_ps),
          prefix, "chain_jitter_fwhm_ps", "ElectronicsParams.chain_jitter_fwhm",
          "must be >= 0", e.chain_jitter_fwhm_ps);
  require(e.window_ps > 0.0 && std::isfinite(e.window_ps), prefix, "window_ps",
          "ElectronicsParams.window", "must be > 0", e.window_ps);
  require(e.tphc_dead_time_us >= 0.0 && std::isfinite(e.tphc_dead_time_us),
          prefix, "tphc_dead_time_us", "ElectronicsParams.tphc_dead_time",
          "must be >= 0", e.tphc_dead_time_us);
  require(e.tphc_range_ps > 0.0 && std::isfinite(e.tphc_range_ps), prefix,
          "tphc_range_ps", "ElectronicsParams.tphc_range", "must be > 0",
          e.tphc_range_ps);
  require(e.start_station == 1 || e.start_station == 2, prefix, "start_station",
          "ElectronicsParams.start_station", "must be 1 or 2",
          e.start_station);
  require(std::isfinite(e.accidental_delay_ns), prefix, "accidental_delay_ns",
          "ElectronicsParams.accidental_delay", "must be finite",
          e.accidental_delay_ns);
  const double shifted_edge =
      std::abs(e.accidental_delay_ns) * 1e3 + e.window_ps / 2.0;
  require(shifted_edge <= e.tphc_range_ps / 2.0, prefix, "tphc_range_ps",
          "ElectronicsParams.tphc_range",
          "must contain the delayed accidental window", e.tphc_range_ps);
}

}  // namespace franson::mc
