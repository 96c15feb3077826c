#include "cli/commands.h"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "franson/analysis/accidentals.h"
#include "franson/analysis/bell_report.h"
#include "franson/analysis/fourier.h"
#include "franson/analysis/fringe_fit.h"
#include "franson/error.h"
#include "franson/montecarlo/engine.h"
#include "franson/version.h"

namespace franson::cli {

namespace fs = std::filesystem;

namespace {

std::string stem_of(const fs::path& prefix) {
  const auto name = prefix.filename().string();
  if (name.empty() || name == "." || name == "..") {
    throw InvalidInputError("output prefix '" + prefix.string() +
                            "' has no file name component");
  }
  return name;
}

fs::path dir_of(const fs::path& prefix) { return prefix.parent_path(); }

std::string padded(std::uint64_t value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) s.insert(0, width - s.size(), '0');
  return s;
}

Json manifest(const Scenario& scenario, std::string_view command,
              std::uint64_t seed, std::string_view stem, Json options,
              const std::vector<std::string>& outputs) {
  Json j;
  j["tool"] = "franson";
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["scenario_hash"] = scenario_hash(scenario);
  j["stem"] = stem;
  j["options"] = std::move(options);
  j["outputs"] = outputs;
  j["scenario"] = serialize_scenario(scenario);
  return j;
}

Json fit_json(const analysis::FringeFit& f) {
  Json j;
  j["mean_level"] = f.mean_level;
  j["mean_level_uncertainty"] = f.mean_level_uncertainty;
  j["visibility"] = f.visibility;
  j["visibility_uncertainty"] = f.visibility_uncertainty;
  j["phase_offset"] = f.phase_offset;
  j["chi_square_per_dof"] = f.chi_square_per_dof;
  j["visibility_out_of_range"] = f.visibility_out_of_range;
  return j;
}

Json bell_json(const analysis::BellReport& r) {
  Json j;
  j["raw_visibility"] = r.raw_visibility;
  j["raw_visibility_uncertainty"] = r.raw_visibility_uncertainty;
  j["net_visibility"] = r.net_visibility;
  j["net_visibility_uncertainty"] = r.net_visibility_uncertainty;
  j["accidentals_per_interval"] = r.accidentals_per_interval;
  j["threshold"] = r.threshold;
  j["sigma_violation"] = r.sigma_violation;
  return j;
}

std::vector<mc::CountRecord> records_of(std::span<const ScanRow> rows) {
  std::vector<mc::CountRecord> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(to_record(r));
  return out;
}

template <typename T>
T option_or(const Json& options, const char* key, T fallback) {
  if (!options.contains(key)) return fallback;
  return options.at(key).get<T>();
}

Json scan_options(const ScanArgs& a) {
  Json j;
  j["points"] = a.points;
  j["duration_s"] = a.duration_s;
  j["seed"] = a.seed;
  j["histogram_bin_ps"] = a.histogram_bin_ps;
  j["histogram_span_ps"] = a.histogram_span_ps;
  return j;
}

Json accidentals_options(const AccidentalsArgs& a) {
  Json j;
  j["duration_s"] = a.duration_s;
  j["seed"] = a.seed;
  return j;
}

Json envelope_options(const EnvelopeArgs& a) {
  Json j;
  j["mismatches_um"] = a.mismatches_um;
  j["points"] = a.points;
  j["duration_s"] = a.duration_s;
  j["seed"] = a.seed;
  j["accidentals_duration_s"] = a.accidentals_duration_s;
  return j;
}

double accidentals_duration(const EnvelopeArgs& a) {
  return a.accidentals_duration_s > 0.0
             ? a.accidentals_duration_s
             : a.duration_s * static_cast<double>(a.points);
}

}  // namespace

std::vector<std::string> write_scan(const Scenario& scenario, const ScanArgs& args,
                                    const fs::path& prefix) {
  if (args.points == 0) throw InvalidInputError("empty scan: --points must be > 0");
  if (!(args.duration_s > 0.0)) {
    throw InvalidInputError("--duration must be > 0");
  }
  validate(scenario);
  const auto stem = stem_of(prefix);
  const auto dir = dir_of(prefix);

  mc::ScanOptions options;
  options.duration_per_point_s = args.duration_s;
  options.seed = args.seed;
  options.workers = args.workers;
  options.histogram_bin_ps = args.histogram_bin_ps;
  options.histogram_span_ps = args.histogram_span_ps;
  const auto settings = mc::delta2_sweep(scenario, args.points);
  const auto records = mc::run_scan(scenario, settings, options);

  const int width =
      std::max<int>(4, static_cast<int>(std::to_string(args.points - 1).size()));
  std::vector<std::string> outputs;
  std::vector<ScanRow> rows;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string hist = stem + "_histograms/point_" + padded(i, width) + ".csv";
    write_text(dir / hist, histogram_csv(records[i].histogram));
    outputs.push_back(hist);
    rows.push_back(scan_row(records[i], i, hist));
  }
  write_text(dir / (stem + ".csv"), scan_csv(rows));
  outputs.insert(outputs.begin(), stem + ".csv");
  const std::string manifest_name = stem + ".manifest.json";
  outputs.push_back(manifest_name);
  write_text(dir / manifest_name,
             dump(manifest(scenario, "scan", args.seed, stem, scan_options(args),
                           outputs)));
  return outputs;
}

std::vector<std::string> write_accidentals(const Scenario& scenario,
                                           const AccidentalsArgs& args,
                                           const fs::path& prefix) {
  if (!(args.duration_s > 0.0)) {
    throw InvalidInputError("--duration must be > 0");
  }
  validate(scenario);
  const auto stem = stem_of(prefix);
  const auto dir = dir_of(prefix);
  AccidentalsFile file;
  file.count = static_cast<double>(
      mc::measure_accidentals(scenario, args.duration_s, args.seed));
  file.duration_s = args.duration_s;
  file.seed = args.seed;
  file.scenario_hash = scenario_hash(scenario);
  const std::string name = stem + ".json";
  write_text(dir / name,
             dump(accidentals_json(file, scenario.electronics.window_ps,
                                   scenario.electronics.accidental_delay_ns)));
  std::vector<std::string> outputs = {name, stem + ".manifest.json"};
  write_text(dir / outputs.back(),
             dump(manifest(scenario, "accidentals", args.seed, stem,
                           accidentals_options(args), outputs)));
  return outputs;
}

EnvelopeRun run_envelope(const Scenario& scenario, const EnvelopeArgs& args) {
  if (args.mismatches_um.size() < 5) {
    throw InsufficientDataError("envelope needs at least 5 mismatch values, got " +
                                std::to_string(args.mismatches_um.size()));
  }
  if (args.points < 5) {
    throw InsufficientDataError("envelope scans need at least 5 points each");
  }
  if (!(args.duration_s > 0.0)) throw InvalidInputError("--duration must be > 0");
  validate(scenario);

  EnvelopeRun run;
  const double acc_duration = accidentals_duration(args);
  run.accidentals.count = static_cast<double>(
      mc::measure_accidentals(scenario, acc_duration, args.seed));
  run.accidentals.duration_s = acc_duration;
  run.accidentals.seed = args.seed;
  run.accidentals.scenario_hash = scenario_hash(scenario);
  const analysis::AccidentalEstimate estimate{run.accidentals.count, acc_duration};

  std::vector<analysis::EnvelopePoint> points;
  for (std::size_t m = 0; m < args.mismatches_um.size(); ++m) {
    Scenario shifted = scenario;
    shifted.interferometers[0].path_offset_um =
        shifted.interferometers[1].path_offset_um + args.mismatches_um[m];
    mc::ScanOptions options;
    options.duration_per_point_s = args.duration_s;
    options.seed = args.seed;
    options.workers = args.workers;
    options.first_point_index = m * args.points;
    const auto settings = mc::delta2_sweep(shifted, args.points);
    const auto records = mc::run_scan(shifted, settings, options);
    const auto raw = analysis::fit_fringe(records);
    const auto net = analysis::subtract_accidentals(records, estimate);
    run.rows.push_back({args.mismatches_um[m], raw.visibility,
                        raw.visibility_uncertainty, net.fit.visibility,
                        net.statistical_uncertainty});
    points.push_back({args.mismatches_um[m], net.fit.visibility,
                      net.statistical_uncertainty});
  }
  run.fit = analysis::fit_envelope(points, scenario.spectral.center_wavelength_nm);
  return run;
}

std::vector<std::string> write_envelope(const Scenario& scenario,
                                        const EnvelopeArgs& args,
                                        const fs::path& prefix) {
  const auto stem = stem_of(prefix);
  const auto dir = dir_of(prefix);
  const auto run = run_envelope(scenario, args);

  std::string csv(kEnvelopeHeader);
  csv += '\n';
  Json per_point = Json::array();
  for (const auto& r : run.rows) {
    csv += format_number(r.path_mismatch_um) + ',' + format_number(r.raw_visibility) +
           ',' + format_number(r.raw_uncertainty) + ',' +
           format_number(r.net_visibility) + ',' + format_number(r.net_uncertainty) +
           '\n';
    Json p;
    p["path_mismatch_um"] = r.path_mismatch_um;
    p["raw_visibility"] = r.raw_visibility;
    p["raw_uncertainty"] = r.raw_uncertainty;
    p["net_visibility"] = r.net_visibility;
    p["net_uncertainty"] = r.net_uncertainty;
    per_point.push_back(std::move(p));
  }
  Json report;
  Json fit;
  fit["coherence_length_um"] = run.fit.coherence_length_um;
  fit["coherence_length_uncertainty_um"] = run.fit.coherence_length_uncertainty_um;
  fit["peak_visibility"] = run.fit.peak_visibility;
  fit["peak_visibility_uncertainty"] = run.fit.peak_visibility_uncertainty;
  fit["half_visibility_mismatch_um"] = run.fit.half_visibility_mismatch_um;
  fit["chi_square_per_dof"] = run.fit.chi_square_per_dof;
  report["envelope_fit"] = std::move(fit);
  report["points"] = std::move(per_point);
  report["accidentals"] =
      accidentals_json(run.accidentals, scenario.electronics.window_ps,
                       scenario.electronics.accidental_delay_ns);
  report["seed"] = args.seed;
  report["scenario_hash"] = scenario_hash(scenario);

  std::vector<std::string> outputs = {stem + ".csv", stem + ".json",
                                      stem + ".manifest.json"};
  write_text(dir / outputs[0], csv);
  write_text(dir / outputs[1], dump(report));
  write_text(dir / outputs[2], dump(manifest(scenario, "envelope", args.seed, stem,
                                             envelope_options(args), outputs)));
  return outputs;
}

Json analyze_report(std::span<const ScanRow> rows, const AccidentalsFile& accidentals,
                    const AnalyzeArgs& args, const std::optional<Json>& scan_manifest) {
  const auto records = records_of(rows);
  const auto raw = analysis::fit_fringe(records);
  const analysis::AccidentalEstimate estimate{accidentals.count,
                                              accidentals.duration_s};
  const auto net = analysis::subtract_accidentals(records, estimate);
  const auto bell = analysis::bell_report(raw, net.fit, net.accidentals_per_interval);
  const auto fourier =
      analysis::fourier_significant_frequencies(records, args.fourier_threshold_sigma);

  Json j;
  j["bell_report"] = bell_json(bell);
  j["raw_fit"] = fit_json(raw);
  auto net_fit = fit_json(net.fit);
  net_fit["visibility_statistical_uncertainty"] = net.statistical_uncertainty;
  j["net_fit"] = std::move(net_fit);
  Json f;
  f["threshold_sigma"] = fourier.threshold_sigma;
  f["significant_count"] = fourier.significant_count();
  f["significant_frequencies"] = fourier.significant_frequencies;
  j["fourier"] = std::move(f);
  Json acc;
  acc["count"] = accidentals.count;
  acc["duration_s"] = accidentals.duration_s;
  acc["per_interval"] = net.accidentals_per_interval;
  acc["per_interval_uncertainty"] = net.accidentals_uncertainty;
  j["accidentals"] = std::move(acc);
  if (args.bootstrap_replicas > 0) {
    const auto points = analysis::fringe_points(records);
    Json b;
    b["replicas"] = args.bootstrap_replicas;
    b["seed"] = args.bootstrap_seed;
    b["raw_visibility_uncertainty"] = analysis::bootstrap_visibility_uncertainty(
        points, args.bootstrap_replicas, args.bootstrap_seed);
    b["net_visibility_uncertainty"] = analysis::bootstrap_net_visibility_uncertainty(
        records, estimate, args.bootstrap_replicas, args.bootstrap_seed);
    j["bootstrap"] = std::move(b);
  }
  Json inputs;
  inputs["points"] = rows.size();
  if (scan_manifest && scan_manifest->contains("seed")) {
    inputs["scan_seed"] = scan_manifest->at("seed");
    inputs["scan_scenario_hash"] = scan_manifest->value("scenario_hash", "");
  }
  inputs["accidentals_seed"] = accidentals.seed;
  inputs["accidentals_scenario_hash"] = accidentals.scenario_hash;
  j["inputs"] = std::move(inputs);
  return j;
}

std::string net_counts_csv(std::span<const ScanRow> rows,
                           const AccidentalsFile& accidentals) {
  const analysis::AccidentalEstimate estimate{accidentals.count,
                                              accidentals.duration_s};
  std::string out(kNetHeader);
  out += '\n';
  for (const auto& r : rows) {
    const double a = estimate.mean_for(r.duration_s);
    out += std::to_string(r.point_index) + ',' + format_number(r.phase_rad) + ',' +
           format_number(r.duration_s) + ',' + std::to_string(r.coincidences) + ',' +
           format_number(a) + ',' +
           format_number(static_cast<double>(r.coincidences) - a) + '\n';
  }
  return out;
}

std::string calibration_note(const mc::CalibrationTargets& t) {
  std::ostringstream s;
  s << "pair rate and coupling fitted by 'franson calibrate' to singles "
    << format_number(t.singles_hz[0]) << "/" << format_number(t.singles_hz[1])
    << " Hz and raw/net visibility " << format_number(t.raw_visibility) << "/"
    << format_number(t.net_visibility);
  return s.str();
}

std::vector<std::string> replay_manifest(const Json& m, const fs::path& out_dir) {
  if (!m.contains("command") || !m.contains("scenario") || !m.contains("stem") ||
      !m.contains("options")) {
    throw ValidationError("manifest", "missing command, scenario, stem or options");
  }
  const auto scenario = parse_scenario(m.at("scenario").get<std::string>(), "manifest");
  if (m.contains("scenario_hash") &&
      m.at("scenario_hash").get<std::string>() != scenario_hash(scenario)) {
    throw ValidationError("manifest.scenario_hash",
                          "does not match the embedded scenario");
  }
  const auto& o = m.at("options");
  const auto prefix = out_dir / m.at("stem").get<std::string>();
  const auto command = m.at("command").get<std::string>();
  if (command == "scan") {
    ScanArgs a;
    a.points = option_or<std::size_t>(o, "points", a.points);
    a.duration_s = option_or<double>(o, "duration_s", a.duration_s);
    a.seed = option_or<std::uint64_t>(o, "seed", a.seed);
    a.histogram_bin_ps = option_or<double>(o, "histogram_bin_ps", a.histogram_bin_ps);
    a.histogram_span_ps =
        option_or<double>(o, "histogram_span_ps", a.histogram_span_ps);
    return write_scan(scenario, a, prefix);
  }
  if (command == "accidentals") {
    AccidentalsArgs a;
    a.duration_s = option_or<double>(o, "duration_s", a.duration_s);
    a.seed = option_or<std::uint64_t>(o, "seed", a.seed);
    return write_accidentals(scenario, a, prefix);
  }
  if (command == "envelope") {
    EnvelopeArgs a;
    a.mismatches_um = o.at("mismatches_um").get<std::vector<double>>();
    a.points = option_or<std::size_t>(o, "points", a.points);
    a.duration_s = option_or<double>(o, "duration_s", a.duration_s);
    a.seed = option_or<std::uint64_t>(o, "seed", a.seed);
    a.accidentals_duration_s =
        option_or<double>(o, "accidentals_duration_s", a.accidentals_duration_s);
    return write_envelope(scenario, a, prefix);
  }
  throw ValidationError("manifest.command", "cannot replay '" + command + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Monte Carlo of a fibre-based energy-time Bell test", "franson"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string scenario_path;
  std::string out_prefix;

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Sweep delta2 and count coincidences");
  scan->add_option("--scenario", scenario_path, "Scenario file")->required();
  scan->add_option("--points", scan_args.points, "Number of phase settings");
  scan->add_option("--duration", scan_args.duration_s, "Seconds per point");
  scan->add_option("--seed", scan_args.seed, "Random seed");
  scan->add_option("--workers", scan_args.workers, "Worker threads");
  scan->add_option("--bin-ps", scan_args.histogram_bin_ps, "Histogram bin width");
  scan->add_option("--span-ps", scan_args.histogram_span_ps,
                   "Histogram half span");
  scan->add_option("--out", out_prefix, "Output prefix")->required();

  AccidentalsArgs acc_args;
  auto* acc = app.add_subcommand(
      "accidentals", "Count coincidences in the delayed window");
  acc->add_option("--scenario", scenario_path, "Scenario file")->required();
  acc->add_option("--duration", acc_args.duration_s, "Seconds");
  acc->add_option("--seed", acc_args.seed, "Random seed");
  acc->add_option("--out", out_prefix, "Output prefix")->required();

  AnalyzeArgs analyze_args;
  std::string scan_csv_path;
  std::string acc_json_path;
  auto* analyze = app.add_subcommand(
      "analyze", "Fit a scan, subtract accidentals and report the Bell test");
  analyze->add_option("--scan", scan_csv_path, "Scan CSV")->required();
  analyze->add_option("--accidentals", acc_json_path, "Accidentals JSON")
      ->required();
  analyze->add_option("--bootstrap", analyze_args.bootstrap_replicas,
                      "Bootstrap replicas (0 = off)");
  analyze->add_option("--bootstrap-seed", analyze_args.bootstrap_seed,
                      "Bootstrap seed");
  analyze->add_option("--fourier-sigma", analyze_args.fourier_threshold_sigma,
                      "Fourier significance threshold");
  analyze->add_option("--out", out_prefix, "Output prefix")->required();

  EnvelopeArgs env_args;
  auto* envelope = app.add_subcommand(
      "envelope", "Fit the coherence envelope over path mismatches");
  envelope->add_option("--scenario", scenario_path, "Scenario file")->required();
  envelope->add_option("--mismatch-list", env_args.mismatches_um,
                       "Comma-separated path mismatches in um")
      ->required()
      ->delimiter(',');
  envelope->add_option("--points", env_args.points, "Phase settings per mismatch");
  envelope->add_option("--duration", env_args.duration_s, "Seconds per point");
  envelope->add_option("--accidentals-duration", env_args.accidentals_duration_s,
                       "Seconds for the accidental measurement");
  envelope->add_option("--seed", env_args.seed, "Random seed");
  envelope->add_option("--workers", env_args.workers, "Worker threads");
  envelope->add_option("--out", out_prefix, "Output prefix")->required();

  mc::CalibrationTargets targets;
  auto* calibrate = app.add_subcommand(
      "calibrate", "Fit pair rate and coupling to observed rates");
  calibrate->add_option("--scenario", scenario_path, "Scenario file")->required();
  calibrate->add_option("--singles1", targets.singles_hz[0], "Station 1 singles (Hz)");
  calibrate->add_option("--singles2", targets.singles_hz[1], "Station 2 singles (Hz)");
  calibrate->add_option("--raw-visibility", targets.raw_visibility,
                        "Observed raw visibility");
  calibrate->add_option("--net-visibility", targets.net_visibility,
                        "Observed net visibility");
  calibrate->add_option("--out", out_prefix, "Calibrated scenario file")->required();

  std::string manifest_path;
  std::string out_dir;
  auto* replay = app.add_subcommand("replay", "Re-run the command in a manifest");
  replay->add_option("--manifest", manifest_path, "Manifest JSON")->required();
  replay->add_option("--out-dir", out_dir, "Output directory")->required();

  std::vector<const char*> argv;
  argv.push_back("franson");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*scan) {
      const auto sc = load_scenario(scenario_path);
      const auto files = write_scan(sc, scan_args, resolve_output(out_prefix));
      out << "scan: " << scan_args.points << " points, " << files.size()
          << " files written\n";
    } else if (*acc) {
      const auto sc = load_scenario(scenario_path);
      const auto prefix = resolve_output(out_prefix);
      write_accidentals(sc, acc_args, prefix);
      out << read_text(prefix.parent_path() / (prefix.filename().string() + ".json"));
    } else if (*analyze) {
      const auto rows = parse_scan_csv(read_text(scan_csv_path), scan_csv_path);
      const auto acc_file =
          parse_accidentals_json(read_text(acc_json_path), acc_json_path);
      std::optional<Json> scan_manifest;
      fs::path manifest_guess(scan_csv_path);
      manifest_guess.replace_extension(".manifest.json");
      if (fs::exists(manifest_guess)) {
        try {
          scan_manifest = Json::parse(read_text(manifest_guess));
        } catch (const nlohmann::json::exception&) {
          scan_manifest.reset();
        }
      }
      const auto report = analyze_report(rows, acc_file, analyze_args, scan_manifest);
      const auto prefix = resolve_output(out_prefix);
      const auto stem = stem_of(prefix);
      write_text(dir_of(prefix) / (stem + ".report.json"), dump(report));
      write_text(dir_of(prefix) / (stem + ".net.csv"), net_counts_csv(rows, acc_file));
      out << dump(report.at("bell_report"));
    } else if (*envelope) {
      const auto sc = load_scenario(scenario_path);
      const auto prefix = resolve_output(out_prefix);
      write_envelope(sc, env_args, prefix);
      const auto report = Json::parse(
          read_text(dir_of(prefix) / (stem_of(prefix) + ".json")));
      out << dump(report.at("envelope_fit"));
    } else if (*calibrate) {
      auto sc = load_scenario(scenario_path);
      const auto result = mc::calibrate(sc, targets);
      sc = mc::apply_calibration(sc, result);
      sc.calibration.pair_rate_note = calibration_note(targets);
      validate(sc);
      save_scenario(sc, resolve_output(out_prefix));
      Json j;
      j["pair_rate_hz"] = result.pair_rate_hz;
      j["pair_coupling_efficiency"] = result.pair_coupling_efficiency;
      j["singles1_hz"] = result.predicted.singles_hz[0];
      j["singles2_hz"] = result.predicted.singles_hz[1];
      j["true_coincidences_per_s"] = result.predicted.true_coincidences_hz;
      j["accidentals_per_s"] = result.predicted.accidentals_hz;
      j["window_fraction"] = result.predicted.window_fraction;
      j["tphc_live_fraction"] = result.predicted.tphc_live_fraction;
      out << dump(j);
    } else if (*replay) {
      const auto m = Json::parse(read_text(manifest_path));
      const auto files = replay_manifest(m, resolve_output(out_dir));
      out << "replay: " << files.size() << " files written\n";
    }
  } catch (const ValidationError& e) {
    err << "franson: validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidInputError& e) {
    err << "franson: invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InsufficientDataError& e) {
    err << "franson: insufficient data: " << e.what() << "\n";
    return kExitValidation;
  } catch (const FitError& e) {
    err << "franson: fit failed: " << e.what() << " (residual norm "
        << e.residual_norm() << ", " << e.iterations() << " evaluations)\n";
    return kExitFit;
  } catch (const IoError& e) {
    err << "franson: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    err << "franson: malformed JSON: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "franson: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace franson::cli
