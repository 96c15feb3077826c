#include "cli/commands.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "franson/error.h"
#include "support/scenarios.h"

namespace franson::cli {
namespace {

namespace fs = std::filesystem;

const std::string kGeneva = std::string(FRANSON_SCENARIO_DIR) + "/geneva1998.scn";
const std::string kBase = std::string(FRANSON_SCENARIO_DIR) + "/geneva1998.base.scn";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("franson_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("FRANSON_OUTPUT_DIR");
  }
  void TearDown() override {
    unsetenv("FRANSON_OUTPUT_DIR");
    fs::remove_all(dir_);
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int small_scan(const std::string& stem, const std::string& seed = "4",
                 const std::string& workers = "1") {
    return run({"scan", "--scenario", kGeneva, "--points", "6", "--duration", "0.4",
                "--seed", seed, "--workers", workers, "--out", path(stem)});
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, ScanWritesFilesAndManifest) {
  ASSERT_EQ(small_scan("s"), kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(path("s.csv")));
  EXPECT_TRUE(fs::exists(path("s.manifest.json")));
  EXPECT_TRUE(fs::exists(path("s_histograms/point_0.csv")) ||
              fs::exists(path("s_histograms/point_00.csv")) ||
              fs::exists(path("s_histograms/point_0000.csv")));
  const auto rows = parse_scan_csv(read_text(path("s.csv")));
  ASSERT_EQ(rows.size(), 6u);
  const auto m = Json::parse(read_text(path("s.manifest.json")));
  EXPECT_EQ(m.at("command"), "scan");
  EXPECT_EQ(m.at("seed"), 4);
  EXPECT_EQ(m.at("scenario_hash"), scenario_hash(testing::geneva()));
  EXPECT_EQ(m.at("outputs").size(), 8u);
  for (const auto& name : m.at("outputs")) {
    EXPECT_TRUE(fs::exists(dir_ / name.get<std::string>())) << name;
  }
  const auto hist = read_text(dir_ / rows[0].histogram_file);
  EXPECT_EQ(hist.substr(0, kHistogramHeader.size()), kHistogramHeader);
}

TEST_F(CliTest, ScanMatchesLibrary) {
  ASSERT_EQ(small_scan("s"), kExitOk) << err_.str();
  const auto rows = parse_scan_csv(read_text(path("s.csv")));
  const Scenario sc = testing::geneva();
  const auto settings = mc::delta2_sweep(sc, 6);
  mc::ScanOptions opt;
  opt.duration_per_point_s = 0.4;
  opt.seed = 4;
  const auto recs = mc::run_scan(sc, settings, opt);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].coincidences, recs[i].windowed_coincidences);
    EXPECT_EQ(rows[i].singles1, recs[i].singles1);
    EXPECT_EQ(rows[i].singles2, recs[i].singles2);
    EXPECT_DOUBLE_EQ(rows[i].phase_rad, recs[i].phase_rad());
    EXPECT_EQ(read_text(dir_ / rows[i].histogram_file), histogram_csv(recs[i].histogram));
  }
}

TEST_F(CliTest, WorkersAndReplayAreByteIdentical) {
  ASSERT_EQ(small_scan("w1/s", "9", "1"), kExitOk);
  ASSERT_EQ(small_scan("w3/s", "9", "3"), kExitOk);
  fs::create_directories(path("replay"));
  ASSERT_EQ(run({"replay", "--manifest", path("w1/s.manifest.json"), "--out-dir",
                 path("replay")}),
            kExitOk)
      << err_.str();
  const auto m = Json::parse(read_text(path("w1/s.manifest.json")));
  for (const auto& name : m.at("outputs")) {
    const auto n = name.get<std::string>();
    const auto ref = read_text(dir_ / "w1" / n);
    EXPECT_EQ(ref, read_text(dir_ / "w3" / n)) << n;
    EXPECT_EQ(ref, read_text(dir_ / "replay" / n)) << n;
  }
}

TEST_F(CliTest, OutputDirEnvironment) {
  setenv("FRANSON_OUTPUT_DIR", dir_.c_str(), 1);
  ASSERT_EQ(run({"accidentals", "--scenario", kGeneva, "--duration", "0.5", "--seed",
                 "2", "--out", "sub/acc"}),
            kExitOk)
      << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "sub" / "acc.json"));
  EXPECT_TRUE(fs::exists(dir_ / "sub" / "acc.manifest.json"));
  const auto acc = parse_accidentals_json(read_text(dir_ / "sub" / "acc.json"));
  EXPECT_DOUBLE_EQ(acc.duration_s, 0.5);
  EXPECT_EQ(acc.seed, 2u);
  EXPECT_DOUBLE_EQ(acc.count, static_cast<double>(mc::measure_accidentals(
                                  testing::geneva(), 0.5, 2)));
  // Absolute paths ignore the variable.
  ASSERT_EQ(run({"accidentals", "--scenario", kGeneva, "--duration", "0.2", "--out",
                 path("abs/acc")}),
            kExitOk);
  EXPECT_TRUE(fs::exists(path("abs/acc.json")));
}

TEST_F(CliTest, AnalyzeReport) {
  ASSERT_EQ(run({"scan", "--scenario", kGeneva, "--points", "8", "--duration", "2",
                 "--seed", "3", "--out", path("s")}),
            kExitOk);
  ASSERT_EQ(run({"accidentals", "--scenario", kGeneva, "--duration", "10", "--out",
                 path("a")}),
            kExitOk);
  ASSERT_EQ(run({"analyze", "--scan", path("s.csv"), "--accidentals", path("a.json"),
                 "--bootstrap", "20", "--out", path("r")}),
            kExitOk)
      << err_.str();
  const auto report = Json::parse(read_text(path("r.report.json")));
  const auto& bell = report.at("bell_report");
  for (const char* key : {"raw_visibility", "raw_visibility_uncertainty", "net_visibility",
                          "net_visibility_uncertainty", "accidentals_per_interval",
                          "threshold", "sigma_violation"}) {
    EXPECT_TRUE(bell.contains(key)) << key;
  }
  EXPECT_EQ(report.at("inputs").at("points"), 8);
  EXPECT_EQ(report.at("inputs").at("scan_seed"), 3);
  EXPECT_TRUE(report.contains("bootstrap"));
  EXPECT_EQ(Json::parse(out_.str()), bell);

  const auto net = read_text(path("r.net.csv"));
  EXPECT_EQ(net.substr(0, kNetHeader.size()), kNetHeader);

  // Library path gives the same numbers.
  const auto rows = parse_scan_csv(read_text(path("s.csv")));
  const auto acc = parse_accidentals_json(read_text(path("a.json")));
  const auto lib = analyze_report(rows, acc, {});
  EXPECT_EQ(lib.at("bell_report"), bell);
}

TEST_F(CliTest, MissingOptionIsValidationError) {
  EXPECT_EQ(run({"scan", "--points", "5"}), kExitValidation);
  EXPECT_EQ(run({"bogus"}), kExitValidation);
}

TEST_F(CliTest, BadScenarioValue) {
  auto text = read_text(kGeneva);
  text.replace(text.find("fiber1.loss_db = 5.6"), 20, "fiber1.loss_db = -2");
  write_text(path("bad.scn"), text);
  EXPECT_EQ(run({"scan", "--scenario", path("bad.scn"), "--points", "5", "--out",
                 path("x")}),
            kExitValidation);
  EXPECT_NE(err_.str().find("fiber1.loss_db"), std::string::npos) << err_.str();
}

TEST_F(CliTest, MissingFileIsIoError) {
  EXPECT_EQ(run({"scan", "--scenario", path("nope.scn"), "--out", path("x")}), kExitIo);
  EXPECT_NE(err_.str().find("nope.scn"), std::string::npos);
}

TEST_F(CliTest, ScanCsvSchemaErrors) {
  std::string csv(kScanHeader);
  csv += "\n0,0,20,1,1,5,h\n1,1,20,1,1,five,h\n";
  write_text(path("bad.csv"), csv);
  write_text(path("a.json"), dump(accidentals_json({10, 20, 1, "x"}, 400, 5)));
  EXPECT_EQ(run({"analyze", "--scan", path("bad.csv"), "--accidentals", path("a.json"),
                 "--out", path("r")}),
            kExitValidation);
  EXPECT_NE(err_.str().find("row 3, column 'coincidences'"), std::string::npos)
      << err_.str();

  EXPECT_THROW(parse_scan_csv("wrong,header\n"), ValidationError);
  EXPECT_THROW(parse_scan_csv(std::string(kScanHeader) + "\n0,0,20,1\n"),
               ValidationError);
  EXPECT_THROW(parse_scan_csv(std::string(kScanHeader) + "\n0,0,0,1,1,1,h\n"),
               ValidationError);
  EXPECT_THROW(parse_accidentals_json("{\"count\": -1, \"duration_s\": 1}"),
               ValidationError);
  EXPECT_THROW(parse_accidentals_json("not json"), ValidationError);
}

TEST_F(CliTest, FlatZeroFringeIsFitError) {
  std::string csv(kScanHeader);
  csv += '\n';
  for (int i = 0; i < 6; ++i) {
    csv += std::to_string(i) + "," + format_number(i * 1.0471975511965976) +
           ",20,100,100,0,h\n";
  }
  write_text(path("zero.csv"), csv);
  write_text(path("a.json"), dump(accidentals_json({0, 20, 1, "x"}, 400, 5)));
  EXPECT_EQ(run({"analyze", "--scan", path("zero.csv"), "--accidentals", path("a.json"),
                 "--out", path("r")}),
            kExitFit);
}

TEST_F(CliTest, EnvelopeNeedsFiveMismatches) {
  EXPECT_EQ(run({"envelope", "--scenario", kGeneva, "--mismatch-list", "0,10,20",
                 "--points", "5", "--duration", "0.1", "--out", path("e")}),
            kExitValidation);
}

TEST_F(CliTest, CalibrateReproducesBundledScenario) {
  ASSERT_EQ(run({"calibrate", "--scenario", kBase, "--out", path("cal.scn")}), kExitOk)
      << err_.str();
  EXPECT_EQ(read_text(path("cal.scn")), read_text(kGeneva));
  const auto j = Json::parse(out_.str());
  EXPECT_NEAR(j.at("singles1_hz").get<double>(), 164e3, 0.1 * 164e3);
  EXPECT_NEAR(j.at("singles2_hz").get<double>(), 167e3, 0.1 * 167e3);
}

TEST(Io, NumberFormattingRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 5.5476878198463045e7, -2.0, 0.0}) {
    EXPECT_EQ(std::stod(format_number(x)), x);
  }
  EXPECT_EQ(format_number(20.0), "20");
}

TEST(Io, ScanCsvRoundTrip) {
  std::vector<ScanRow> rows{{0, 0.0, 20.0, 1, 2, 3, "h0"}, {1, 0.25, 20.0, 4, 5, 6, "h1"}};
  const auto back = parse_scan_csv(scan_csv(rows));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].singles2, 5u);
  EXPECT_DOUBLE_EQ(back[1].phase_rad, 0.25);
  EXPECT_EQ(back[1].histogram_file, "h1");
  const auto rec = to_record(back[1]);
  EXPECT_DOUBLE_EQ(rec.phase_rad(), 0.25);
  EXPECT_EQ(rec.windowed_coincidences, 6u);
}

TEST(Io, WriteToUnwritablePathIsIoError) {
  EXPECT_THROW(write_text("/proc/franson/x.txt", "x"), IoError);
  EXPECT_THROW(read_text("/nonexistent/franson.txt"), IoError);
}

}  // namespace
}  // namespace franson::cli
