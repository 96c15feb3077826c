#include "cli/io.h"

#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "franson/error.h"

namespace franson::cli {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T parse_field(std::string_view text, std::string_view source, std::size_t row,
              std::string_view column) {
  T value{};
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    std::ostringstream where;
    where << source << ": row " << row << ", column '" << column << "'";
    throw ValidationError(where.str(), "cannot parse '" + std::string(t) + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::filesystem::path resolve_output(const std::filesystem::path& path) {
  if (path.is_absolute()) return path;
  const char* base = std::getenv("FRANSON_OUTPUT_DIR");
  if (base == nullptr || *base == '\0') return path;
  return std::filesystem::path(base) / path;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(path.string(), "read failed");
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path().string(), ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError(path.string(), "write failed");
}

std::string scan_csv(std::span<const ScanRow> rows) {
  std::string out(kScanHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.point_index) + ',' + format_number(r.phase_rad) + ',' +
           format_number(r.duration_s) + ',' + std::to_string(r.singles1) + ',' +
           std::to_string(r.singles2) + ',' + std::to_string(r.coincidences) + ',' +
           r.histogram_file + '\n';
  }
  return out;
}

std::vector<ScanRow> parse_scan_csv(std::string_view text, std::string_view source) {
  const auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != kScanHeader) {
    throw ValidationError(std::string(source) + ": row 1",
                          "expected header '" + std::string(kScanHeader) + "'");
  }
  const auto columns = split(kScanHeader, ',');
  std::vector<ScanRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto f = split(trim(lines[i]), ',');
    const std::size_t row = i + 1;
    if (f.size() != columns.size()) {
      std::ostringstream msg;
      msg << "expected " << columns.size() << " columns, got " << f.size();
      throw ValidationError(std::string(source) + ": row " + std::to_string(row),
                            msg.str());
    }
    ScanRow r;
    r.point_index = parse_field<std::uint64_t>(f[0], source, row, columns[0]);
    r.phase_rad = parse_field<double>(f[1], source, row, columns[1]);
    r.duration_s = parse_field<double>(f[2], source, row, columns[2]);
    r.singles1 = parse_field<std::uint64_t>(f[3], source, row, columns[3]);
    r.singles2 = parse_field<std::uint64_t>(f[4], source, row, columns[4]);
    r.coincidences = parse_field<std::uint64_t>(f[5], source, row, columns[5]);
    r.histogram_file = std::string(trim(f[6]));
    if (!(r.duration_s > 0.0)) {
      throw ValidationError(std::string(source) + ": row " + std::to_string(row) +
                                ", column 'duration_s'",
                            "must be > 0");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

ScanRow scan_row(const mc::CountRecord& record, std::uint64_t point_index,
                 std::string histogram_file) {
  ScanRow r;
  r.point_index = point_index;
  r.phase_rad = record.phase_rad();
  r.duration_s = record.duration_s;
  r.singles1 = record.singles1;
  r.singles2 = record.singles2;
  r.coincidences = record.windowed_coincidences;
  r.histogram_file = std::move(histogram_file);
  return r;
}

mc::CountRecord to_record(const ScanRow& row) {
  mc::CountRecord rec;
  rec.phases.delta1_rad = 0.0;
  rec.phases.delta2_rad = row.phase_rad;
  rec.duration_s = row.duration_s;
  rec.singles1 = row.singles1;
  rec.singles2 = row.singles2;
  rec.windowed_coincidences = row.coincidences;
  return rec;
}

std::string histogram_csv(const mc::Histogram& histogram) {
  std::string out(kHistogramHeader);
  out += '\n';
  for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
    out += format_number(histogram.bin_center_ps(i)) + ',' +
           std::to_string(histogram.counts[i]) + '\n';
  }
  return out;
}

Json accidentals_json(const AccidentalsFile& file, double window_ps,
                      double delay_ns) {
  Json j;
  j["count"] = file.count;
  j["duration_s"] = file.duration_s;
  j["rate_hz"] = file.duration_s > 0.0 ? file.count / file.duration_s : 0.0;
  j["window_ps"] = window_ps;
  j["delay_ns"] = delay_ns;
  j["seed"] = file.seed;
  j["scenario_hash"] = file.scenario_hash;
  return j;
}

AccidentalsFile parse_accidentals_json(std::string_view text,
                                       std::string_view source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string(source), e.what());
  }
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw ValidationError(std::string(source) + ": field '" + key + "'",
                            "missing or not a number");
    }
    return j[key].get<double>();
  };
  AccidentalsFile f;
  f.count = number("count");
  f.duration_s = number("duration_s");
  if (f.count < 0.0) {
    throw ValidationError(std::string(source) + ": field 'count'", "must be >= 0");
  }
  if (!(f.duration_s > 0.0)) {
    throw ValidationError(std::string(source) + ": field 'duration_s'",
                          "must be > 0");
  }
  if (j.contains("seed") && j["seed"].is_number_unsigned()) {
    f.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("scenario_hash") && j["scenario_hash"].is_string()) {
    f.scenario_hash = j["scenario_hash"].get<std::string>();
  }
  return f;
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace franson::cli
