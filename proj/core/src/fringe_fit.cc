#include "franson/analysis/fringe_fit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "franson/error.h"
#include "franson/rng.h"
#include "least_squares.h"

namespace franson::analysis {

namespace {

double wrap_phase(double phi) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, kTwoPi);
  if (phi <= -std::numbers::pi) phi += kTwoPi;
  if (phi > std::numbers::pi) phi -= kTwoPi;
  return phi;
}

}  // namespace

std::vector<FringePoint> fringe_points(std::span<const mc::CountRecord> records) {
  std::vector<FringePoint> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const double c = static_cast<double>(r.windowed_coincidences);
    out.push_back({r.phase_rad(), c, std::max(c, 1.0)});
  }
  return out;
}

FringeFit fit_fringe(std::span<const FringePoint> points) {
  const int n = static_cast<int>(points.size());
  if (n < 5) {
    throw InsufficientDataError("fringe fit needs at least 5 points, got " +
                                std::to_string(n));
  }
  const auto [lo, hi] = std::minmax_element(
      points.begin(), points.end(),
      [](const FringePoint& a, const FringePoint& b) { return a.phase_rad < b.phase_rad; });
  if (!(hi->phase_rad - lo->phase_rad > std::numbers::pi)) {
    throw InsufficientDataError(
        "fringe fit needs phases spanning more than half a period");
  }
  for (const auto& p : points) {
    if (!(p.variance > 0.0) || !std::isfinite(p.counts) ||
        !std::isfinite(p.phase_rad)) {
      throw InvalidInputError("fringe points need finite counts and variance > 0");
    }
  }

  // Discrete Fourier components for the starting point.
  double a0 = 0.0;
  double a1 = 0.0;
  double b1 = 0.0;
  for (const auto& p : points) {
    a0 += p.counts;
    a1 += p.counts * std::cos(p.phase_rad);
    b1 += p.counts * std::sin(p.phase_rad);
  }
  a0 /= n;
  a1 *= 2.0 / n;
  b1 *= 2.0 / n;
  const double m0 = std::abs(a0) > 1e-12 ? a0 : 1.0;

  detail::Problem problem;
  problem.parameters = 3;
  problem.observations = n;
  problem.residuals = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    for (int i = 0; i < n; ++i) {
      const auto& p = points[i];
      const double model = x[0] * (1.0 + x[1] * std::cos(p.phase_rad + x[2]));
      r[i] = (p.counts - model) / std::sqrt(p.variance);
    }
  };
  problem.jacobian = [&](const Eigen::VectorXd& x, Eigen::MatrixXd& j) {
    for (int i = 0; i < n; ++i) {
      const auto& p = points[i];
      const double w = 1.0 / std::sqrt(p.variance);
      const double c = std::cos(p.phase_rad + x[2]);
      const double s = std::sin(p.phase_rad + x[2]);
      j(i, 0) = -w * (1.0 + x[1] * c);
      j(i, 1) = -w * x[0] * c;
      j(i, 2) = w * x[0] * x[1] * s;
    }
  };

  Eigen::VectorXd x0(3);
  x0 << m0, std::hypot(a1, b1) / m0, std::atan2(-b1, a1);
  auto sol = detail::solve(problem, x0);
  if (sol.converged && !sol.covariance_ok && sol.x.allFinite()) {
    // A flat fringe leaves the phase undetermined; keep (M, V) at the fitted
    // phase and report the phase without uncertainty.
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sol.normal.topLeftCorner(2, 2));
    if (lu.isInvertible()) {
      sol.covariance = Eigen::MatrixXd::Zero(3, 3);
      sol.covariance.topLeftCorner(2, 2) = lu.inverse();
      sol.covariance_ok = true;
    }
  }
  if (!sol.converged || !sol.covariance_ok || !sol.x.allFinite()) {
    std::ostringstream msg;
    msg << "fringe fit did not converge after " << sol.evaluations
        << " evaluations (chi^2 = " << sol.chi_square << ")";
    throw FitError(msg.str(), std::sqrt(sol.chi_square), sol.evaluations);
  }
  if (!(sol.x[0] > 0.0)) {
    throw FitError("fringe fit produced a non-positive mean level",
                   std::sqrt(sol.chi_square), sol.evaluations);
  }

  FringeFit fit;
  fit.mean_level = sol.x[0];
  fit.mean_level_uncertainty = std::sqrt(std::max(sol.covariance(0, 0), 0.0));
  fit.visibility = sol.x[1];
  fit.visibility_uncertainty = std::sqrt(std::max(sol.covariance(1, 1), 0.0));
  fit.phase_offset = sol.x[2];
  if (fit.visibility < 0.0) {
    fit.visibility = -fit.visibility;
    fit.phase_offset += std::numbers::pi;
  }
  fit.phase_offset = wrap_phase(fit.phase_offset);
  fit.chi_square_per_dof = n > 3 ? sol.chi_square / (n - 3) : 0.0;
  const double eps = 3.0 * fit.visibility_uncertainty;
  fit.visibility_out_of_range =
      fit.visibility < -eps || fit.visibility > 1.0 + eps;
  return fit;
}

FringeFit fit_fringe(std::span<const mc::CountRecord> records) {
  const auto points = fringe_points(records);
  return fit_fringe(points);
}

double bootstrap_visibility_uncertainty(std::span<const FringePoint> points,
                                        unsigned replicas, std::uint64_t seed) {
  if (replicas < 2) {
    throw InvalidInputError("bootstrap needs at least 2 replicas");
  }
  std::vector<double> v;
  v.reserve(replicas);
  std::vector<FringePoint> resampled(points.begin(), points.end());
  for (unsigned r = 0; r < replicas; ++r) {
    RngStream rng(seed, StreamTag::kBootstrap, r);
    for (std::size_t i = 0; i < points.size(); ++i) {
      double c = 0.0;
      if (points[i].counts > 0.0) {
        std::poisson_distribution<long long> draw(points[i].counts);
        c = static_cast<double>(draw(rng));
      }
      resampled[i].counts = c;
      resampled[i].variance = std::max(c, 1.0);
    }
    v.push_back(fit_fringe(resampled).visibility);
  }
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace franson::analysis
