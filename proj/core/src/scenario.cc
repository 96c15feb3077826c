#include "franson/scenario.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "franson/error.h"

namespace franson {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Field {
  std::string key;
  std::function<void(Scenario&, std::string_view)> set;
  std::function<std::string(const Scenario&)> get;
};

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw InvalidInputError("expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw InvalidInputError("expected an integer, got '" + std::string(text) +
                            "'");
  }
  return v;
}

template <typename Member>
Field number(std::string key, Member member) {
  return Field{std::move(key),
               [member](Scenario& s, std::string_view v) {
                 member(s) = parse_double(v);
               },
               [member](const Scenario& s) {
                 return format_double(member(const_cast<Scenario&>(s)));
               }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"name", [](Scenario& s, std::string_view v) { s.name = v; },
                 [](const Scenario& s) { return s.name; }});

    f.push_back(number("source.pair_rate_hz",
                       [](Scenario& s) -> double& { return s.source.pair_rate_hz; }));
    f.push_back(number("source.pump_wavelength_nm", [](Scenario& s) -> double& {
      return s.source.pump_wavelength_nm;
    }));
    f.push_back(number("source.split_probability", [](Scenario& s) -> double& {
      return s.source.split_probability;
    }));
    f.push_back(number("source.pair_coupling_efficiency",
                       [](Scenario& s) -> double& {
                         return s.source.pair_coupling_efficiency;
                       }));

    for (int k = 0; k < 2; ++k) {
      const std::string fib = "fiber" + std::to_string(k + 1) + ".";
      f.push_back(number(fib + "length_km", [k](Scenario& s) -> double& {
        return s.fibers[k].length_km;
      }));
      f.push_back(number(fib + "loss_db", [k](Scenario& s) -> double& {
        return s.fibers[k].loss_db;
      }));
      f.push_back(number(fib + "group_index", [k](Scenario& s) -> double& {
        return s.fibers[k].group_index;
      }));
      f.push_back({fib + "dispersion_mode",
                   [k](Scenario& s, std::string_view v) {
                     s.fibers[k].dispersion_mode = mc::parse_dispersion_mode(v);
                   },
                   [k](const Scenario& s) {
                     return std::string(to_string(s.fibers[k].dispersion_mode));
                   }});
      f.push_back(number(fib + "lumped_jitter_fwhm_ps", [k](Scenario& s) -> double& {
        return s.fibers[k].lumped_jitter_fwhm_ps;
      }));
      f.push_back(number(fib + "dispersion_slope_ps_per_nm2_km",
                         [k](Scenario& s) -> double& {
                           return s.fibers[k].dispersion_slope_ps_per_nm2_km;
                         }));
      f.push_back(number(fib + "zero_dispersion_wavelength_nm",
                         [k](Scenario& s) -> double& {
                           return s.fibers[k].zero_dispersion_wavelength_nm;
                         }));
    }

    for (int k = 0; k < 2; ++k) {
      const std::string ifm = "interferometer" + std::to_string(k + 1) + ".";
      f.push_back(number(ifm + "phase_rad", [k](Scenario& s) -> double& {
        return s.interferometers[k].phase_rad;
      }));
      f.push_back(number(ifm + "arm_imbalance_ps", [k](Scenario& s) -> double& {
        return s.interferometers[k].arm_imbalance_ps;
      }));
      f.push_back({ifm + "detector_ports",
                   [k](Scenario& s, std::string_view v) {
                     s.interferometers[k].detector_ports =
                         mc::parse_detector_ports(v);
                   },
                   [k](const Scenario& s) {
                     return std::string(
                         to_string(s.interferometers[k].detector_ports));
                   }});
      f.push_back(number(ifm + "path_offset_um", [k](Scenario& s) -> double& {
        return s.interferometers[k].path_offset_um;
      }));
    }

    for (int k = 0; k < 2; ++k) {
      const std::string det = "detector" + std::to_string(k + 1) + ".";
      f.push_back(number(det + "efficiency", [k](Scenario& s) -> double& {
        return s.detectors[k].efficiency;
      }));
      f.push_back(number(det + "dark_rate_hz", [k](Scenario& s) -> double& {
        return s.detectors[k].dark_rate_hz;
      }));
      f.push_back(number(det + "jitter_fwhm_ps", [k](Scenario& s) -> double& {
        return s.detectors[k].jitter_fwhm_ps;
      }));
      f.push_back(number(det + "dead_time_ns", [k](Scenario& s) -> double& {
        return s.detectors[k].dead_time_ns;
      }));
      f.push_back(number(det + "afterpulse_probability", [k](Scenario& s) -> double& {
        return s.detectors[k].afterpulse_probability;
      }));
      f.push_back(number(det + "afterpulse_delay_ns", [k](Scenario& s) -> double& {
        return s.detectors[k].afterpulse_delay_ns;
      }));
    }

    f.push_back(number("electronics.chain_jitter_fwhm_ps", [](Scenario& s) -> double& {
      return s.electronics.chain_jitter_fwhm_ps;
    }));
    f.push_back(number("electronics.window_ps", [](Scenario& s) -> double& {
      return s.electronics.window_ps;
    }));
    f.push_back(number("electronics.tphc_dead_time_us", [](Scenario& s) -> double& {
      return s.electronics.tphc_dead_time_us;
    }));
    f.push_back(number("electronics.tphc_range_ps", [](Scenario& s) -> double& {
      return s.electronics.tphc_range_ps;
    }));
    f.push_back({"electronics.start_station",
                 [](Scenario& s, std::string_view v) {
                   s.electronics.start_station = parse_int(v);
                 },
                 [](const Scenario& s) {
                   return std::to_string(s.electronics.start_station);
                 }});
    f.push_back(number("electronics.accidental_delay_ns", [](Scenario& s) -> double& {
      return s.electronics.accidental_delay_ns;
    }));

    f.push_back(number("spectral.center_wavelength_nm", [](Scenario& s) -> double& {
      return s.spectral.center_wavelength_nm;
    }));
    f.push_back(number("spectral.bandwidth_fwhm_nm", [](Scenario& s) -> double& {
      return s.spectral.bandwidth_fwhm_nm;
    }));
    f.push_back(number("spectral.coherence_length_um", [](Scenario& s) -> double& {
      return s.spectral.coherence_length_um;
    }));

    f.push_back(number("visibility.apparatus", [](Scenario& s) -> double& {
      return s.visibility.apparatus_visibility;
    }));

    f.push_back({"calibration.pair_rate_note",
                 [](Scenario& s, std::string_view v) {
                   s.calibration.pair_rate_note = v;
                 },
                 [](const Scenario& s) { return s.calibration.pair_rate_note; }});
    f.push_back({"calibration.coherence_convention",
                 [](Scenario& s, std::string_view v) {
                   s.calibration.convention = model::parse_convention(v);
                 },
                 [](const Scenario& s) {
                   return std::string(to_string(s.calibration.convention));
                 }});
    f.push_back(number("calibration.convention_factor", [](Scenario& s) -> double& {
      return s.calibration.convention_factor;
    }));
    return f;
  }();
  return table;
}

const std::map<std::string, const Field*, std::less<>>& field_index() {
  static const auto index = [] {
    std::map<std::string, const Field*, std::less<>> m;
    for (const auto& f : fields()) m.emplace(f.key, &f);
    return m;
  }();
  return index;
}

}  // namespace

model::PhaseSetting Scenario::nominal_phases() const {
  return {interferometers[0].phase_rad, interferometers[1].phase_rad,
          path_mismatch_um()};
}

double Scenario::path_mismatch_um() const {
  return interferometers[0].path_offset_um - interferometers[1].path_offset_um;
}

void validate(const Scenario& s) {
  mc::validate(s.source, "source");
  for (int k = 0; k < 2; ++k) {
    const std::string n = std::to_string(k + 1);
    mc::validate(s.fibers[k], "fiber" + n);
    mc::validate(s.interferometers[k], "interferometer" + n);
    mc::validate(s.detectors[k], "detector" + n);
  }
  mc::validate(s.electronics, "electronics");
  try {
    model::validate(s.spectral);
    model::validate(s.visibility);
  } catch (const ValidationError& e) {
    throw ValidationError("spectral/visibility", e.what());
  }

  if (s.interferometers[0].arm_imbalance_ps !=
      s.interferometers[1].arm_imbalance_ps) {
    throw ValidationError("interferometer2.arm_imbalance_ps",
                          "both interferometers must share the same arm "
                          "imbalance delay");
  }
  const double imbalance = s.interferometers[0].arm_imbalance_ps;
  if (s.electronics.window_ps >= imbalance) {
    throw ValidationError(
        "electronics.window_ps",
        "ElectronicsParams.window must be shorter than the arm imbalance "
        "delay, otherwise satellite peaks fall inside the window");
  }

  const double expected = model::coherence_length_from_bandwidth(
      s.spectral.center_wavelength_nm, s.spectral.bandwidth_fwhm_nm,
      s.calibration.convention, s.calibration.convention_factor);
  if (std::abs(expected - s.spectral.coherence_length_um) >
      1e-3 * s.spectral.coherence_length_um) {
    std::ostringstream msg;
    msg << "SpectralParams.coherence_length " << s.spectral.coherence_length_um
        << " um disagrees with the " << to_string(s.calibration.convention)
        << " convention value " << expected << " um";
    throw ValidationError("spectral.coherence_length_um", msg.str());
  }
}

Scenario parse_scenario(std::string_view text, std::string_view source_name) {
  Scenario s;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const std::string where =
        std::string(source_name) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(where, "expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto& index = field_index();
    const auto it = index.find(key);
    if (it == index.end()) {
      throw ValidationError(where, "unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ValidationError(where, "duplicate key '" + std::string(key) + "'");
    }
    try {
      it->second->set(s, value);
    } catch (const InvalidInputError& e) {
      throw ValidationError(where + " (" + std::string(key) + ")", e.what());
    }
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize_scenario(const Scenario& scenario) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    const auto dot = f.key.find('.');
    const std::string sec =
        dot == std::string::npos ? std::string() : f.key.substr(0, dot);
    if (sec != section && !out.empty()) out += '\n';
    section = sec;
    out += f.key;
    out += " = ";
    out += f.get(scenario);
    out += '\n';
  }
  return out;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << serialize_scenario(scenario);
  if (!out) throw IoError(path.string(), "write failed");
}

std::string scenario_hash(const Scenario& scenario) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_scenario(scenario)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool operator==(const Scenario& a, const Scenario& b) {
  return serialize_scenario(a) == serialize_scenario(b);
}

}  // namespace franson
