#include "franson/montecarlo/interferometer.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

namespace franson::mc {
namespace {

using model::Sign;

int port_index(Sign s) { return s == Sign::kPlus ? 0 : 1; }

double tolerance(double p, double n) { return 5.0 * std::sqrt(p * (1 - p) / n); }

TEST(SamplePaths, PathPairsUniform) {
  RngStream rng(21, StreamTag::kInterferometer, 0);
  const auto joint = model::joint_outcome_distribution({}, {}, {0.816});
  std::array<int, 4> counts{};
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const auto s = sample_paths_and_ports(joint, rng);
    const int idx = (s.photons[0].arm == Arm::kLong ? 1 : 0) +
                    (s.photons[1].arm == Arm::kLong ? 2 : 0);
    ++counts[idx];
  }
  for (int c : counts) EXPECT_NEAR(c / double(n), 0.25, tolerance(0.25, n));
}

TEST(SamplePaths, InterferingPortsFollowJointDistribution) {
  const model::SpectralParams spec;
  for (double phase : {0.0, 1.0, 2.5}) {
    const model::PhaseSetting ph{phase, 0.3, 5.0};
    const auto joint = model::joint_outcome_distribution(ph, spec, {0.9});
    RngStream rng(22, StreamTag::kInterferometer, 1);
    std::array<std::array<double, 2>, 2> hist{};
    double interfering = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
      const auto s = sample_paths_and_ports(ph, spec, {0.9}, rng);
      if (!s.interfering()) continue;
      interfering += 1.0;
      hist[port_index(s.photons[0].port)][port_index(s.photons[1].port)] += 1.0;
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        EXPECT_NEAR(hist[i][j] / interfering, joint.p[i][j],
                    tolerance(joint.p[i][j], interfering));
      }
    }
  }
}

TEST(SamplePaths, NonInterferingPortsUniform) {
  // Perfect correlation for interfering pairs must not leak into SL/LS.
  const auto joint = model::joint_outcome_distribution({}, {}, {1.0});
  RngStream rng(23, StreamTag::kInterferometer, 2);
  std::array<std::array<double, 2>, 2> hist{};
  double total = 0.0;
  for (int k = 0; k < 200000; ++k) {
    const auto s = sample_paths_and_ports(joint, rng);
    if (s.interfering()) {
      EXPECT_EQ(s.photons[0].port, s.photons[1].port);
      continue;
    }
    total += 1.0;
    hist[port_index(s.photons[0].port)][port_index(s.photons[1].port)] += 1.0;
  }
  for (auto& row : hist) {
    for (double h : row) EXPECT_NEAR(h / total, 0.25, tolerance(0.25, total));
  }
}

TEST(SampleSingle, UniformArmAndPort) {
  RngStream rng(24, StreamTag::kInterferometer, 3);
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const auto p = sample_single_path_and_port(rng);
    ++counts[(p.arm == Arm::kLong ? 1 : 0) + 2 * port_index(p.port)];
  }
  for (int c : counts) EXPECT_NEAR(c / double(n), 0.25, tolerance(0.25, n));
}

TEST(ArmDelay, LongArmCarriesImbalance) {
  InterferometerParams ifm;
  ifm.arm_imbalance_ps = 1000.4;
  EXPECT_EQ(arm_delay_ps(Arm::kShort, ifm), 0);
  EXPECT_EQ(arm_delay_ps(Arm::kLong, ifm), 1000);
}

TEST(HasDetector, FollowsPortMap) {
  InterferometerParams ifm;
  ifm.detector_ports = {true, false};
  EXPECT_TRUE(has_detector(ifm, Sign::kPlus));
  EXPECT_FALSE(has_detector(ifm, Sign::kMinus));
  ifm.detector_ports = {false, true};
  EXPECT_FALSE(has_detector(ifm, Sign::kPlus));
  EXPECT_TRUE(has_detector(ifm, Sign::kMinus));
}

}  // namespace
}  // namespace franson::mc
