#pragma once

// File formats written and read by the franson tool.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "franson/montecarlo/engine.h"
#include "json.hpp"

namespace franson::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kScanHeader =
    "point_index,phase_rad,duration_s,singles1,singles2,coincidences,histogram_file";
inline constexpr std::string_view kHistogramHeader = "bin_center_ps,count";
inline constexpr std::string_view kNetHeader =
    "point_index,phase_rad,duration_s,coincidences,accidentals,net_coincidences";
inline constexpr std::string_view kEnvelopeHeader =
    "path_mismatch_um,raw_visibility,raw_uncertainty,net_visibility,net_uncertainty";

// Shortest text that parses back to the same double.
std::string format_number(double value);

// Relative paths are taken against $FRANSON_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
// Creates parent directories. Throws IoError naming the path.
void write_text(const std::filesystem::path& path, std::string_view content);

struct ScanRow {
  std::uint64_t point_index = 0;
  double phase_rad = 0.0;
  double duration_s = 0.0;
  std::uint64_t singles1 = 0;
  std::uint64_t singles2 = 0;
  std::uint64_t coincidences = 0;
  std::string histogram_file;
};

std::string scan_csv(std::span<const ScanRow> rows);
// Throws ValidationError with row and column for schema violations.
std::vector<ScanRow> parse_scan_csv(std::string_view text,
                                    std::string_view source = "<scan>");

ScanRow scan_row(const mc::CountRecord& record, std::uint64_t point_index,
                 std::string histogram_file);
// Phase sum goes into delta2; the histogram is not restored.
mc::CountRecord to_record(const ScanRow& row);

std::string histogram_csv(const mc::Histogram& histogram);

struct AccidentalsFile {
  double count = 0.0;
  double duration_s = 0.0;
  std::uint64_t seed = 0;
  std::string scenario_hash;
};

Json accidentals_json(const AccidentalsFile& file, double window_ps,
                      double delay_ns);
AccidentalsFile parse_accidentals_json(std::string_view text,
                                       std::string_view source = "<accidentals>");

// Text written for every JSON output: two-space indent, trailing newline.
std::string dump(const Json& json);

}  // namespace franson::cli
