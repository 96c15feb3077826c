#pragma once

#include <cstdint>
#include <string_view>

namespace franson::mc {

struct SourceParams {
  // Calibration input; see calibration.h.
  double pair_rate_hz = 0.0;
  double pump_wavelength_nm = 655.7;
  // 3-dB coupler: probability the two photons leave by different fibres.
  double split_probability = 0.5;
  // Independent per-photon probability of being collected into the source
  // fibre. Lowers coincidences relative to singles.
  double pair_coupling_efficiency = 1.0;

  // Degenerate signal/idler wavelength fixed by energy conservation.
  double pair_center_wavelength_nm() const { return 2.0 * pump_wavelength_nm; }
};

enum class DispersionMode { kLumped, kAnalytic };

DispersionMode parse_dispersion_mode(std::string_view name);
std::string_view to_string(DispersionMode mode);

struct FiberChannel {
  double length_km = 0.0;
  double loss_db = 0.0;
  double group_index = 1.468;
  DispersionMode dispersion_mode = DispersionMode::kLumped;
  // Lumped mode: delay spread per channel, fully correlated with the pair
  // detuning, so the differential FWHM of two channels is the sum.
  double lumped_jitter_fwhm_ps = 0.0;
  double dispersion_slope_ps_per_nm2_km = 0.086;
  double zero_dispersion_wavelength_nm = 1310.0;

  double transmittance() const;
};

// Which logical output ports of an interferometer carry a detector.
struct DetectorPorts {
  bool plus = true;
  bool minus = false;

  int count() const { return (plus ? 1 : 0) + (minus ? 1 : 0); }
};

DetectorPorts parse_detector_ports(std::string_view text);
std::string_view to_string(DetectorPorts ports);

struct InterferometerParams {
  double phase_rad = 0.0;
  double arm_imbalance_ps = 1000.0;
  DetectorPorts detector_ports;
  // Optical path offset of this interferometer's imbalance; the envelope
  // mismatch is offset1 - offset2.
  double path_offset_um = 0.0;
};

struct DetectorParams {
  double efficiency = 0.15;
  double dark_rate_hz = 100e3;
  double jitter_fwhm_ps = 200.0;
  double dead_time_ns = 1000.0;
  double afterpulse_probability = 0.0;
  double afterpulse_delay_ns = 500.0;
};

struct ElectronicsParams {
  // 450 ps FWHM / sqrt(2) per channel.
  double chain_jitter_fwhm_ps = 318.19805153394634;
  double window_ps = 400.0;
  double tphc_dead_time_us = 4.0;
  // Full conversion range, centred on the compensated zero delay.
  double tphc_range_ps = 20000.0;
  int start_station = 1;
  double accidental_delay_ns = 5.0;
};

void validate(const SourceParams& source, std::string_view prefix = "source");
void validate(const FiberChannel& fiber, std::string_view prefix = "fiber");
void validate(const InterferometerParams& ifm,
              std::string_view prefix = "interferometer");
void validate(const DetectorParams& det, std::string_view prefix = "detector");
void validate(const ElectronicsParams& el,
              std::string_view prefix = "electronics");

}  // namespace franson::mc
