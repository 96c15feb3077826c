#include "franson/analysis/accidentals.h"

#include <cmath>
#include <random>

#include "franson/error.h"
#include "franson/rng.h"

namespace franson::analysis {

namespace {

std::vector<FringePoint> shifted(std::span<const FringePoint> raw,
                                 std::span<const double> accidentals) {
  std::vector<FringePoint> out(raw.begin(), raw.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].counts -= accidentals[i];
  return out;
}

NetFringe subtract_per_point(std::span<const FringePoint> raw,
                             std::span<const double> accidentals,
                             std::span<const double> uncertainty) {
  NetFringe net;
  net.points = shifted(raw, accidentals);
  net.fit = fit_fringe(net.points);
  net.statistical_uncertainty = net.fit.visibility_uncertainty;

  double sigma_a = 0.0;
  for (double u : uncertainty) sigma_a = std::max(sigma_a, u);
  if (sigma_a > 0.0) {
    // Central difference of V with respect to a common shift of A, scaled
    // per point by its own uncertainty share.
    const double h = sigma_a;
    std::vector<double> up(accidentals.begin(), accidentals.end());
    std::vector<double> down(accidentals.begin(), accidentals.end());
    for (std::size_t i = 0; i < up.size(); ++i) {
      const double share = uncertainty[i] / sigma_a;
      up[i] += h * share;
      down[i] -= h * share;
    }
    const double v_up = fit_fringe(shifted(raw, up)).visibility;
    const double v_down = fit_fringe(shifted(raw, down)).visibility;
    const double dv = (v_up - v_down) / 2.0;
    net.fit.visibility_uncertainty =
        std::sqrt(net.fit.visibility_uncertainty * net.fit.visibility_uncertainty +
                  dv * dv);
    const double eps = 3.0 * net.fit.visibility_uncertainty;
    net.fit.visibility_out_of_range =
        net.fit.visibility < -eps || net.fit.visibility > 1.0 + eps;
  }
  return net;
}

}  // namespace

double AccidentalEstimate::mean_for(double interval_s) const {
  if (!(duration_s > 0.0)) {
    throw InvalidInputError("accidental measurement duration must be > 0");
  }
  return count * interval_s / duration_s;
}

double AccidentalEstimate::uncertainty_for(double interval_s) const {
  if (!(duration_s > 0.0)) {
    throw InvalidInputError("accidental measurement duration must be > 0");
  }
  return std::sqrt(std::max(count, 0.0)) * interval_s / duration_s;
}

NetFringe subtract_accidentals(std::span<const FringePoint> raw,
                               double accidentals_per_interval,
                               double accidentals_uncertainty) {
  if (accidentals_per_interval < 0.0 || accidentals_uncertainty < 0.0) {
    throw InvalidInputError("accidental estimate must be non-negative");
  }
  const std::vector<double> a(raw.size(), accidentals_per_interval);
  const std::vector<double> u(raw.size(), accidentals_uncertainty);
  auto net = subtract_per_point(raw, a, u);
  net.accidentals_per_interval = accidentals_per_interval;
  net.accidentals_uncertainty = accidentals_uncertainty;
  return net;
}

NetFringe subtract_accidentals(std::span<const mc::CountRecord> records,
                               const AccidentalEstimate& accidentals) {
  if (accidentals.count < 0.0) {
    throw InvalidInputError("accidental count must be non-negative");
  }
  const auto raw = fringe_points(records);
  std::vector<double> a;
  std::vector<double> u;
  double mean_interval = 0.0;
  for (const auto& r : records) {
    a.push_back(accidentals.mean_for(r.duration_s));
    u.push_back(accidentals.uncertainty_for(r.duration_s));
    mean_interval += r.duration_s;
  }
  auto net = subtract_per_point(raw, a, u);
  if (!records.empty()) {
    mean_interval /= static_cast<double>(records.size());
    net.accidentals_per_interval = accidentals.mean_for(mean_interval);
    net.accidentals_uncertainty = accidentals.uncertainty_for(mean_interval);
  }
  return net;
}

double bootstrap_net_visibility_uncertainty(
    std::span<const mc::CountRecord> records,
    const AccidentalEstimate& accidentals, unsigned replicas, std::uint64_t seed) {
  if (replicas < 2) {
    throw InvalidInputError("bootstrap needs at least 2 replicas");
  }
  auto poisson = [](double mean, RngStream& rng) {
    if (!(mean > 0.0)) return 0.0;
    std::poisson_distribution<long long> draw(mean);
    return static_cast<double>(draw(rng));
  };
  const auto raw = fringe_points(records);
  std::vector<double> v;
  v.reserve(replicas);
  for (unsigned r = 0; r < replicas; ++r) {
    RngStream rng(seed, StreamTag::kBootstrap, r, 1);
    std::vector<FringePoint> sample = raw;
    for (auto& p : sample) {
      p.counts = poisson(p.counts, rng);
      p.variance = std::max(p.counts, 1.0);
    }
    const double acc = poisson(accidentals.count, rng);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      sample[i].counts -= acc * records[i].duration_s / accidentals.duration_s;
    }
    v.push_back(fit_fringe(sample).visibility);
  }
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace franson::analysis
