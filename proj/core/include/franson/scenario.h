#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "franson/model/model.h"
#include "franson/montecarlo/params.h"

namespace franson {

struct CalibrationBlock {
  std::string pair_rate_note;
  model::CoherenceConvention convention =
      model::CoherenceConvention::kPaperCalibrated;
  double convention_factor = model::kPaperConventionFactor;
};

// Full description of one experiment. Index 0 is station 1 (the start side
// by default), index 1 is station 2.
struct Scenario {
  std::string name = "unnamed";
  mc::SourceParams source;
  std::array<mc::FiberChannel, 2> fibers;
  std::array<mc::InterferometerParams, 2> interferometers;
  std::array<mc::DetectorParams, 2> detectors;
  mc::ElectronicsParams electronics;
  model::SpectralParams spectral;
  model::VisibilityParams visibility;
  CalibrationBlock calibration;

  model::PhaseSetting nominal_phases() const;
  double path_mismatch_um() const;
};

// Throws ValidationError naming the offending key and type field.
void validate(const Scenario& scenario);

// Line-oriented `dotted.key = value` text; '#' starts a comment line.
// Unknown or duplicate keys are rejected with the line number.
Scenario parse_scenario(std::string_view text,
                        std::string_view source_name = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

// 16 hex digits of FNV-1a over the canonical text.
std::string scenario_hash(const Scenario& scenario);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace franson
