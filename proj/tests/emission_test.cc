#include "franson/montecarlo/emission.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace franson::mc {
namespace {

TEST(PoissonTimes, CountAndOrdering) {
  RngStream rng(11, StreamTag::kSynthetic, 0);
  const double rate = 2e5;
  const double duration = 2.0;
  const auto t = poisson_times(rate, duration, rng);
  const double mean = rate * duration;
  EXPECT_NEAR(static_cast<double>(t.size()), mean, 5.0 * std::sqrt(mean));
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
  ASSERT_FALSE(t.empty());
  EXPECT_GE(t.front(), 0);
  EXPECT_LE(t.back(), static_cast<Picoseconds>(duration * 1e12));
}

TEST(PoissonTimes, GapsAreExponential) {
  RngStream rng(12, StreamTag::kSynthetic, 0);
  const double rate = 1e6;
  const auto t = poisson_times(rate, 0.5, rng);
  const double mean_gap = 1e12 / rate;
  std::size_t above = 0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (static_cast<double>(t[k] - t[k - 1]) > mean_gap) ++above;
  }
  const double n = static_cast<double>(t.size() - 1);
  const double p = std::exp(-1.0);
  EXPECT_NEAR(above / n, p, 5.0 * std::sqrt(p * (1 - p) / n));
}

TEST(PoissonTimes, EmptyForZeroRateOrDuration) {
  RngStream rng(1, StreamTag::kSynthetic, 0);
  EXPECT_TRUE(poisson_times(0.0, 1.0, rng).empty());
  EXPECT_TRUE(poisson_times(1e3, 0.0, rng).empty());
}

TEST(EmitPairs, RateDetuningAndCoupling) {
  SourceParams src;
  src.pair_rate_hz = 5e5;
  src.pair_coupling_efficiency = 0.3;
  model::SpectralParams spec;
  RngStream rng(13, StreamTag::kEmission, 0);
  const auto pairs = emit_pairs(src, spec, 1.0, rng);
  const double n = static_cast<double>(pairs.size());
  EXPECT_NEAR(n, 5e5, 5.0 * std::sqrt(5e5));

  const double sigma = detuning_sigma_nm(spec);
  EXPECT_NEAR(sigma, 90.0 / 2.35482, 1e-4);
  double sum = 0.0;
  double sq = 0.0;
  std::size_t coupled = 0;
  std::size_t both = 0;
  for (const auto& p : pairs) {
    sum += p.detuning_nm;
    sq += p.detuning_nm * p.detuning_nm;
    coupled += p.coupled[0] + p.coupled[1];
    both += p.coupled[0] && p.coupled[1];
  }
  EXPECT_NEAR(sum / n, 0.0, 5.0 * sigma / std::sqrt(n));
  EXPECT_NEAR(std::sqrt(sq / n), sigma, 0.01 * sigma);
  EXPECT_NEAR(coupled / (2 * n), 0.3, 5.0 * std::sqrt(0.21 / (2 * n)));
  EXPECT_NEAR(both / n, 0.09, 5.0 * std::sqrt(0.09 * 0.91 / n));
}

TEST(RouteAtCoupler, SplitFractions) {
  RngStream rng(14, StreamTag::kCoupler, 0);
  const int n = 200000;
  int split = 0;
  int first = 0;
  for (int k = 0; k < n; ++k) {
    switch (route_at_coupler(0.5, rng)) {
      case Routing::kSplit: ++split; break;
      case Routing::kBothToStation1: ++first; break;
      case Routing::kBothToStation2: break;
    }
  }
  EXPECT_NEAR(split / static_cast<double>(n), 0.5, 5.0 * std::sqrt(0.25 / n));
  EXPECT_NEAR(first / static_cast<double>(n), 0.25, 5.0 * std::sqrt(0.1875 / n));
}

}  // namespace
}  // namespace franson::mc
