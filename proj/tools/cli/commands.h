#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cli/io.h"
#include "franson/analysis/envelope_fit.h"
#include "franson/montecarlo/calibration.h"
#include "franson/scenario.h"

namespace franson::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitFit = 3,
  kExitIo = 4,
};

struct ScanArgs {
  std::size_t points = 25;
  double duration_s = 20.0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double histogram_bin_ps = 50.0;
  double histogram_span_ps = 4000.0;
};

struct AccidentalsArgs {
  double duration_s = 20.0;
  std::uint64_t seed = 1;
};

struct EnvelopeArgs {
  std::vector<double> mismatches_um;
  std::size_t points = 25;
  double duration_s = 20.0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  // 0 means points * duration.
  double accidentals_duration_s = 0.0;
};

struct AnalyzeArgs {
  unsigned bootstrap_replicas = 0;
  std::uint64_t bootstrap_seed = 1;
  double fourier_threshold_sigma = 5.0;
};

// Output files are named after the last component of `prefix` and placed in
// its directory. Each returns the written file names relative to that
// directory, the manifest last.
std::vector<std::string> write_scan(const Scenario& scenario, const ScanArgs& args,
                                    const std::filesystem::path& prefix);
std::vector<std::string> write_accidentals(const Scenario& scenario,
                                           const AccidentalsArgs& args,
                                           const std::filesystem::path& prefix);
std::vector<std::string> write_envelope(const Scenario& scenario,
                                        const EnvelopeArgs& args,
                                        const std::filesystem::path& prefix);

struct EnvelopeRow {
  double path_mismatch_um = 0.0;
  double raw_visibility = 0.0;
  double raw_uncertainty = 0.0;
  double net_visibility = 0.0;
  double net_uncertainty = 0.0;
};

struct EnvelopeRun {
  std::vector<EnvelopeRow> rows;
  AccidentalsFile accidentals;
  analysis::EnvelopeFit fit;
};

// Per mismatch: a delta2 scan, raw and net fringe fits; then the Gaussian
// envelope fitted to the net visibilities. The accidental estimate is shared,
// so the per-point weights use the fit covariance alone.
EnvelopeRun run_envelope(const Scenario& scenario, const EnvelopeArgs& args);

// Report JSON for a scan and an accidental measurement. `scan_manifest` is
// used only for provenance fields when present.
Json analyze_report(std::span<const ScanRow> rows, const AccidentalsFile& accidentals,
                    const AnalyzeArgs& args,
                    const std::optional<Json>& scan_manifest = std::nullopt);
std::string net_counts_csv(std::span<const ScanRow> rows,
                           const AccidentalsFile& accidentals);

std::string calibration_note(const mc::CalibrationTargets& targets);

// Re-runs the command recorded in a manifest, writing under `out_dir`.
std::vector<std::string> replay_manifest(const Json& manifest,
                                         const std::filesystem::path& out_dir);

// Full command-line entry point; returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace franson::cli
