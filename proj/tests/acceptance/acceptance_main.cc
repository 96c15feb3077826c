// Runs the end-to-end checks against the bundled geneva1998 scenario and
// prints one verdict line per criterion. The exit status only reports whether
// the harness itself ran; the verdicts are in the output.

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.h"
#include "franson/analysis/accidentals.h"
#include "franson/analysis/bell_report.h"
#include "franson/analysis/fourier.h"
#include "franson/analysis/fringe_fit.h"
#include "franson/model/model.h"
#include "franson/montecarlo/calibration.h"
#include "franson/montecarlo/engine.h"
#include "support/scenarios.h"

namespace fs = std::filesystem;
using franson::Scenario;
using franson::cli::Json;
namespace mc = franson::mc;
namespace an = franson::analysis;
namespace model = franson::model;

namespace {

constexpr double kPi = std::numbers::pi;

const std::string kGeneva = std::string(FRANSON_SCENARIO_DIR) + "/geneva1998.scn";
const std::string kBase = std::string(FRANSON_SCENARIO_DIR) + "/geneva1998.base.scn";

// Seeds fixed before any result was looked at.
constexpr std::uint64_t kSeedMain = 1998;
constexpr std::uint64_t kSeedPaperScale = 1999;
constexpr std::uint64_t kSeedEnvelope = 2000;
constexpr std::uint64_t kSeedHistogram = 2001;
constexpr std::uint64_t kSeedOracle = 2002;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path g_work;
int g_pass = 0;
int g_fail = 0;

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("error: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  (v.pass ? g_pass : g_fail)++;
  std::cout << "criterion " << id << " [" << (v.pass ? "PASS" : "FAIL") << "] " << name
            << ": " << v.detail << fmt(" (%.0f s)", secs) << std::endl;
}

std::string cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = franson::cli::run_cli(args, out, err);
  if (code != franson::cli::kExitOk) {
    throw std::runtime_error("franson " + args[0] + " exited " + std::to_string(code) +
                             ": " + err.str());
  }
  return out.str();
}

std::string work(const std::string& name) { return (g_work / name).string(); }

Json read_json(const std::string& path) {
  return Json::parse(franson::cli::read_text(path));
}

// Shared by criteria 3, 4 and 6.
Json g_main_report;

void run_main_scan() {
  if (!g_main_report.is_null()) return;
  cli({"scan", "--scenario", kGeneva, "--points", "25", "--duration", "20", "--seed",
       std::to_string(kSeedMain), "--out", work("main/scan")});
  cli({"accidentals", "--scenario", kGeneva, "--duration", "500", "--seed",
       std::to_string(kSeedMain), "--out", work("main/accidentals")});
  cli({"analyze", "--scan", work("main/scan.csv"), "--accidentals",
       work("main/accidentals.json"), "--out", work("main/analysis")});
  g_main_report = read_json(work("main/analysis.report.json"));
}

Verdict singles() {
  const Scenario sc = franson::testing::geneva();
  mc::ScanOptions opt;
  opt.duration_per_point_s = 2.0;
  opt.seed = kSeedMain;
  const auto rec = mc::run_point(sc, sc.nominal_phases(), opt, 0);
  const double r1 = rec.singles1 / 2.0;
  const double r2 = rec.singles2 / 2.0;
  const bool ok = std::abs(r1 / 164e3 - 1.0) <= 0.1 && std::abs(r2 / 167e3 - 1.0) <= 0.1;
  return {ok, fmt("station 1 %.1f kHz (target 164 +-10%%), station 2 %.1f kHz "
                  "(target 167 +-10%%)",
                  r1 / 1e3, r2 / 1e3)};
}

Verdict accidentals() {
  cli({"accidentals", "--scenario", kGeneva, "--duration", "20", "--seed",
       std::to_string(kSeedMain), "--out", work("c2/accidentals")});
  const double n = read_json(work("c2/accidentals.json")).at("count").get<double>();
  return {n >= 100 && n <= 220, fmt("%.0f coincidences in the delayed window over 20 s "
                                    "(accepted 100..220)",
                                    n)};
}

Verdict raw_visibility() {
  run_main_scan();
  const auto& b = g_main_report.at("bell_report");
  const double v = b.at("raw_visibility").get<double>();
  const double s = b.at("raw_visibility_uncertainty").get<double>();
  return {std::abs(v - 0.46) <= 0.05,
          fmt("raw V = %.4f +- %.4f over 25 x 20 s (accepted 0.46 +- 0.05)", v, s)};
}

Verdict net_visibility() {
  run_main_scan();
  const auto& b = g_main_report.at("bell_report");
  const double v = b.at("net_visibility").get<double>();
  const double s = b.at("net_visibility_uncertainty").get<double>();
  const double a = b.at("accidentals_per_interval").get<double>();
  return {std::abs(v - 0.816) <= 0.03,
          fmt("net V = %.4f +- %.4f with %.1f accidentals per 20 s subtracted "
              "(accepted 0.816 +- 0.03)",
              v, s, a)};
}

Verdict bell_significance() {
  run_main_scan();
  const auto& b = g_main_report.at("bell_report");
  const double s_main = b.at("net_visibility_uncertainty").get<double>();
  const double z_main = b.at("sigma_violation").get<double>();
  const bool ok_main = s_main <= 0.02 && z_main >= 5.0;

  // Paper-scale statistics: 20 s points, enough of them for sigma_V near 0.011,
  // with the accidental rate measured for as long as the scan.
  const Scenario sc = franson::testing::geneva();
  const std::size_t points = 177;
  mc::ScanOptions opt;
  opt.duration_per_point_s = 20.0;
  opt.seed = kSeedPaperScale;
  const auto records = mc::run_scan(sc, mc::delta2_sweep(sc, points), opt);
  const double acc_duration = 20.0 * points;
  const double acc = static_cast<double>(
      mc::measure_accidentals(sc, acc_duration, kSeedPaperScale));
  const auto raw = an::fit_fringe(records);
  const auto net = an::subtract_accidentals(records, {acc, acc_duration});
  const auto report = an::bell_report(raw, net.fit, net.accidentals_per_interval);
  const bool ok_paper = std::abs(report.sigma_violation - 10.0) <= 3.0;

  return {ok_main && ok_paper,
          fmt("25 x 20 s: sigma_V = %.4f (need <= 0.02), %.2f sigma (need >= 5); "
              "%zu x 20 s: V = %.4f +- %.4f, %.2f sigma (need 10 +- 3)",
              s_main, z_main, points, report.net_visibility,
              report.net_visibility_uncertainty, report.sigma_violation)};
}

Verdict fourier() {
  run_main_scan();
  const auto& f = g_main_report.at("fourier");
  const auto n = f.at("significant_count").get<std::size_t>();
  std::string freqs;
  for (const auto& x : f.at("significant_frequencies")) {
    freqs += (freqs.empty() ? "" : ",") + fmt("%g", x.get<double>());
  }
  return {n == 1, fmt("%zu significant frequency (%s) at %.0f sigma threshold", n,
                      freqs.c_str(), f.at("threshold_sigma").get<double>())};
}

Verdict envelope() {
  cli({"envelope", "--scenario", kGeneva, "--mismatch-list",
       "0,5,10,15,20,25,30,35,40,45,50", "--points", "25", "--duration", "20", "--seed",
       std::to_string(kSeedEnvelope), "--out", work("c7/envelope")});
  const auto fit = read_json(work("c7/envelope.json")).at("envelope_fit");
  const double lc = fit.at("coherence_length_um").get<double>();
  const double dlc = fit.at("coherence_length_uncertainty_um").get<double>();
  const double half = fit.at("half_visibility_mismatch_um").get<double>();
  const bool ok = std::abs(lc / 10.2 - 1.0) <= 0.05 && std::abs(half - 40.7) <= 2.0;
  return {ok, fmt("L_c = %.3f +- %.3f um (accepted 10.2 +- 5%%), half-visibility at "
                  "%.2f um (accepted 40.7 +- 2)",
                  lc, dlc, half)};
}

// Central-peak detector pairs from raw tags; ideal devices put every true
// coincidence at zero difference.
std::array<std::array<double, 2>, 2> port_pairs(const mc::StationTags& tags,
                                                double half_window_ps) {
  std::array<std::array<double, 2>, 2> n{};
  const auto& a = tags.station[0];
  const auto& b = tags.station[1];
  std::size_t j = 0;
  for (const auto& t : a) {
    while (j < b.size() && b[j].time_ps < t.time_ps - half_window_ps) ++j;
    for (std::size_t k = j; k < b.size() && b[k].time_ps <= t.time_ps + half_window_ps;
         ++k) {
      n[t.detector][b[k].detector] += 1.0;
    }
  }
  return n;
}

Verdict oracle_equivalence() {
  Scenario sc = franson::testing::ideal(1e5);
  sc.visibility.apparatus_visibility = 0.9;
  const double half = 0.5 * sc.electronics.window_ps;
  double worst = 0.0;
  double fewest = 1e300;
  for (int k = 0; k < 8; ++k) {
    model::PhaseSetting ph = sc.nominal_phases();
    ph.delta2_rad = (k + 0.5) * 2.0 * kPi / 8.0;
    const auto joint = model::joint_outcome_distribution(ph, sc.spectral, sc.visibility);
    const auto tags = mc::simulate_tags(sc, ph, 4.5, kSeedOracle, k);
    const auto n = port_pairs(tags, half);
    const double total = n[0][0] + n[0][1] + n[1][0] + n[1][1];
    fewest = std::min(fewest, total);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double p = joint.p[i][j];
        const double z = (n[i][j] - total * p) / std::sqrt(total * p * (1.0 - p));
        worst = std::max(worst, std::abs(z));
      }
    }
  }
  return {worst <= 4.0 && fewest >= 1e5,
          fmt("8 phase settings, >= %.0f post-selected events each, largest cell "
              "deviation %.2f sigma (accepted 4)",
              fewest, worst)};
}

double gaussian_mass(double lo, double hi, double mu, double sigma) {
  const double s = sigma * std::numbers::sqrt2;
  return 0.5 * (std::erf((hi - mu) / s) - std::erf((lo - mu) / s));
}

Verdict structural_histogram() {
  const Scenario sc = franson::testing::geneva();
  const double sigma = mc::predict_rates(sc).difference_sigma_ps;
  const double d = sc.interferometers[0].arm_imbalance_ps;
  mc::ScanOptions opt;
  opt.duration_per_point_s = 20.0;
  opt.seed = kSeedHistogram;
  const auto records = mc::run_scan(sc, mc::delta2_sweep(sc, 8), opt);

  const auto& h0 = records[0].histogram;
  std::vector<double> sum(h0.counts.size(), 0.0);
  for (const auto& r : records) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r.histogram.counts[i];
  }

  // Flat background per bin from the far tails.
  double bg_total = 0.0;
  int bg_bins = 0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const double c = std::abs(h0.bin_center_ps(i));
    if (c >= 2500.0 && c <= 4000.0) {
      bg_total += sum[i];
      ++bg_bins;
    }
  }
  const double bg = bg_total / bg_bins;
  const double bg_var = bg_total / (static_cast<double>(bg_bins) * bg_bins);

  // Windows of one imbalance centred on each peak; unmix the Gaussian tails.
  const std::array<double, 3> centers{-d, 0.0, d};
  Eigen::Vector3d w;
  Eigen::Vector3d raw_counts;
  Eigen::Vector3d centroid;
  Eigen::Matrix3d leak;
  std::array<int, 3> nbins{};
  for (int a = 0; a < 3; ++a) {
    const double lo = centers[a] - d / 2.0;
    const double hi = centers[a] + d / 2.0;
    double raw = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < sum.size(); ++i) {
      const double c = h0.bin_center_ps(i);
      if (c > lo && c < hi) {
        raw += sum[i];
        moment += (sum[i] - bg) * c;
        ++nbins[a];
      }
    }
    const double width = nbins[a] * h0.bin_width_ps;
    const double edge_lo = centers[a] - width / 2.0;
    const double edge_hi = centers[a] + width / 2.0;
    w[a] = raw - bg * nbins[a];
    raw_counts[a] = raw;
    centroid[a] = moment / w[a];
    for (int b = 0; b < 3; ++b) leak(a, b) = gaussian_mass(edge_lo, edge_hi, centers[b], sigma);
  }
  // The background estimate is shared by all three windows.
  const Eigen::Vector3d n(nbins[0], nbins[1], nbins[2]);
  const Eigen::Matrix3d w_cov =
      Eigen::Matrix3d(raw_counts.asDiagonal()) + bg_var * n * n.transpose();
  const Eigen::Matrix3d inv = leak.inverse();
  const Eigen::Vector3d area = inv * w;
  const Eigen::Matrix3d cov = inv * w_cov * inv.transpose();

  // 1:2:1 as two contrasts: L - R = 0 and C - (L + R) = 0.
  Eigen::RowVector3d c1(1.0, 0.0, -1.0);
  Eigen::RowVector3d c2(-1.0, 1.0, -1.0);
  const double z1 = (c1 * area)(0) / std::sqrt((c1 * cov * c1.transpose())(0));
  const double z2 = (c2 * area)(0) / std::sqrt((c2 * cov * c2.transpose())(0));

  bool located = true;
  for (int a = 0; a < 3; ++a) located &= std::abs(centroid[a] - centers[a]) <= 100.0;

  // Satellites against a constant across the phase settings.
  std::vector<double> sat;
  for (const auto& r : records) {
    sat.push_back(static_cast<double>(r.histogram.sum_between(-d - d / 2, -d + d / 2) +
                                      r.histogram.sum_between(d - d / 2, d + d / 2)));
  }
  double mean = 0.0;
  for (double s : sat) mean += s;
  mean /= static_cast<double>(sat.size());
  double chi2 = 0.0;
  for (double s : sat) chi2 += (s - mean) * (s - mean) / mean;
  const boost::math::chi_squared dist(static_cast<double>(sat.size() - 1));
  // Same tail probability as 4 sigma two-sided.
  const double chi2_limit = boost::math::quantile(dist, 1.0 - 6.334e-5);

  const bool ok = located && std::abs(z1) <= 4.0 && std::abs(z2) <= 4.0 && chi2 <= chi2_limit;
  return {ok, fmt("peaks at %.0f/%.0f/%.0f ps, areas %.0f:%.0f:%.0f = 1:%.3f:%.3f "
                  "(z %.2f, %.2f; accepted 4), satellite chi2 %.1f on %zu dof "
                  "(limit %.1f)",
                  centroid[0], centroid[1], centroid[2], area[0], area[1], area[2],
                  area[1] / area[0], area[2] / area[0], z1, z2, chi2, sat.size() - 1,
                  chi2_limit)};
}

bool same_files(const fs::path& a, const fs::path& b, std::string& diff) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), a));
  }
  std::size_t count_b = 0;
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file()) ++count_b;
  }
  if (files.size() != count_b) {
    diff = fmt("%zu vs %zu files", files.size(), count_b);
    return false;
  }
  for (const auto& f : files) {
    if (!fs::exists(b / f) ||
        franson::cli::read_text(a / f) != franson::cli::read_text(b / f)) {
      diff = f.string();
      return false;
    }
  }
  return !files.empty();
}

Verdict determinism() {
  auto run_all = [](const std::string& dir, const std::string& workers) {
    const auto p = [&](const std::string& n) { return work(dir + "/" + n); };
    cli({"scan", "--scenario", kGeneva, "--points", "6", "--duration", "2", "--seed",
         "77", "--workers", workers, "--out", p("scan")});
    cli({"accidentals", "--scenario", kGeneva, "--duration", "5", "--seed", "77",
         "--out", p("acc")});
    cli({"analyze", "--scan", p("scan.csv"), "--accidentals", p("acc.json"),
         "--bootstrap", "50", "--out", p("analysis")});
    cli({"envelope", "--scenario", kGeneva, "--mismatch-list", "0,15,30,45,60",
         "--points", "6", "--duration", "1", "--seed", "77", "--workers", workers,
         "--out", p("envelope")});
    cli({"calibrate", "--scenario", kBase, "--out", p("calibrated.scn")});
  };
  run_all("c10/a", "1");
  run_all("c10/b", "1");
  run_all("c10/c", "3");
  fs::create_directories(work("c10/replay"));
  for (const char* m : {"scan", "acc", "envelope"}) {
    cli({"replay", "--manifest", work(std::string("c10/a/") + m + ".manifest.json"),
         "--out-dir", work("c10/replay")});
  }
  std::string diff;
  if (!same_files(work("c10/a"), work("c10/b"), diff)) {
    return {false, "repeat differs: " + diff};
  }
  if (!same_files(work("c10/a"), work("c10/c"), diff)) {
    return {false, "worker count changes output: " + diff};
  }
  std::size_t replayed = 0;
  for (const auto& e : fs::recursive_directory_iterator(work("c10/replay"))) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), work("c10/replay"));
    if (franson::cli::read_text(e.path()) !=
        franson::cli::read_text(work("c10/a") / rel)) {
      return {false, "replay differs: " + rel.string()};
    }
    ++replayed;
  }
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(work("c10/a"))) {
    files += e.is_regular_file();
  }
  return {replayed > 0, fmt("%zu files byte-identical across two runs and 1 vs 3 "
                            "workers; %zu replayed files identical",
                            files, replayed)};
}

Verdict loss_bookkeeping() {
  const Scenario sc = franson::testing::geneva();
  const double t1 = sc.fibers[0].transmittance();
  const double t2 = sc.fibers[1].transmittance();
  const double factor = 1.0 / (t1 * t2);
  const bool arithmetic = std::abs(t1 - 0.2754) <= 5e-5 && std::abs(t2 - 0.3236) <= 5e-5 &&
                          factor >= 8.0 && factor <= 12.5;

  // Same devices with and without the fibre losses.
  Scenario lossless = franson::testing::ideal(2e4);
  Scenario lossy = lossless;
  lossy.fibers[0].loss_db = sc.fibers[0].loss_db;
  lossy.fibers[1].loss_db = sc.fibers[1].loss_db;
  mc::ScanOptions opt;
  opt.seed = kSeedOracle;
  opt.duration_per_point_s = 10.0;
  const double n0 = static_cast<double>(
      mc::run_point(lossless, lossless.nominal_phases(), opt, 100).windowed_coincidences) /
      10.0;
  opt.duration_per_point_s = 40.0;
  const double n1 = static_cast<double>(
      mc::run_point(lossy, lossy.nominal_phases(), opt, 101).windowed_coincidences) /
      40.0;
  const double ratio = n0 / n1;
  const double ratio_sigma = ratio * std::sqrt(1.0 / (n0 * 10.0) + 1.0 / (n1 * 40.0));
  const bool mc_ok = std::abs(ratio - factor) <= 4.0 * ratio_sigma;
  return {arithmetic && mc_ok,
          fmt("T1 = %.4f, T2 = %.4f, 1/(T1 T2) = %.2f (about 10); simulated "
              "coincidence ratio %.2f +- %.2f",
              t1, t2, factor, ratio, ratio_sigma)};
}

}  // namespace

int main(int argc, char** argv) {
  g_work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "franson_acceptance";
  try {
    fs::remove_all(g_work);
    fs::create_directories(g_work);
  } catch (const std::exception& e) {
    std::cerr << "cannot prepare " << g_work << ": " << e.what() << "\n";
    return 1;
  }
  std::cout << "work directory " << g_work.string() << std::endl;

  criterion(1, "singles", singles);
  criterion(2, "accidentals", accidentals);
  criterion(3, "raw visibility", raw_visibility);
  criterion(4, "net visibility", net_visibility);
  criterion(5, "Bell significance", bell_significance);
  criterion(6, "Fourier check", fourier);
  criterion(7, "envelope", envelope);
  criterion(8, "oracle equivalence", oracle_equivalence);
  criterion(9, "structural histogram", structural_histogram);
  criterion(10, "determinism", determinism);
  criterion(11, "loss bookkeeping", loss_bookkeeping);

  std::cout << g_pass << " passed, " << g_fail << " failed" << std::endl;
  return 0;
}
