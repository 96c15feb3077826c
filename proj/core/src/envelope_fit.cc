#include "franson/analysis/envelope_fit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "franson/error.h"
#include "franson/model/model.h"
#include "least_squares.h"

namespace franson::analysis {

EnvelopeFit fit_envelope(std::span<const EnvelopePoint> points,
                         double center_wavelength_nm) {
  const int n = static_cast<int>(points.size());
  if (n < 5) {
    throw InsufficientDataError("envelope fit needs at least 5 points, got " +
                                std::to_string(n));
  }
  if (!(center_wavelength_nm > 0.0)) {
    throw InvalidInputError("center wavelength must be > 0");
  }
  for (const auto& p : points) {
    if (!(p.uncertainty > 0.0) || !std::isfinite(p.visibility) ||
        !std::isfinite(p.path_mismatch_um)) {
      throw InvalidInputError(
          "envelope points need finite values and uncertainty > 0");
    }
  }
  const double lambda_um = center_wavelength_nm * 1e-3;
  const double scale = lambda_um / (2.0 * std::numbers::pi);

  // ln V = ln V0 - (scale / L_c)^2 d^2, weighted by (V / sigma)^2.
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    if (p.visibility <= 0.0) continue;
    const double w = std::pow(p.visibility / p.uncertainty, 2);
    const double x = p.path_mismatch_um * p.path_mismatch_um;
    const double y = std::log(p.visibility);
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  double v0 = 0.0;
  double lc0 = 0.0;
  const double det = sw * sxx - sx * sx;
  if (sw > 0.0 && det > 0.0) {
    const double slope = (sw * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / sw;
    v0 = std::exp(intercept);
    if (slope < 0.0) lc0 = scale / std::sqrt(-slope);
  }
  if (!(v0 > 0.0) || !std::isfinite(v0)) {
    v0 = std::max_element(points.begin(), points.end(),
                          [](const auto& a, const auto& b) {
                            return a.visibility < b.visibility;
                          })->visibility;
  }
  if (!(lc0 > 0.0) || !std::isfinite(lc0)) {
    double span = 0.0;
    for (const auto& p : points) span = std::max(span, std::abs(p.path_mismatch_um));
    lc0 = std::max(span, 1.0) * std::numbers::pi / lambda_um;
  }

  detail::Problem problem;
  problem.parameters = 2;
  problem.observations = n;
  problem.residuals = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    for (int i = 0; i < n; ++i) {
      const auto& p = points[i];
      const double u = scale * p.path_mismatch_um / x[1];
      r[i] = (p.visibility - x[0] * std::exp(-u * u)) / p.uncertainty;
    }
  };
  problem.jacobian = [&](const Eigen::VectorXd& x, Eigen::MatrixXd& j) {
    for (int i = 0; i < n; ++i) {
      const auto& p = points[i];
      const double u = scale * p.path_mismatch_um / x[1];
      const double e = std::exp(-u * u);
      j(i, 0) = -e / p.uncertainty;
      j(i, 1) = -x[0] * e * 2.0 * u * u / x[1] / p.uncertainty;
    }
  };
  Eigen::VectorXd x0(2);
  x0 << v0, lc0;
  const auto sol = detail::solve(problem, x0);
  if (!sol.converged || !sol.covariance_ok || !sol.x.allFinite() ||
      !(sol.x[0] > 0.0)) {
    std::ostringstream msg;
    msg << "envelope fit did not converge after " << sol.evaluations
        << " evaluations (chi^2 = " << sol.chi_square << ")";
    throw FitError(msg.str(), std::sqrt(sol.chi_square), sol.evaluations);
  }

  EnvelopeFit fit;
  fit.peak_visibility = sol.x[0];
  fit.peak_visibility_uncertainty = std::sqrt(std::max(sol.covariance(0, 0), 0.0));
  fit.coherence_length_um = std::abs(sol.x[1]);
  fit.coherence_length_uncertainty_um =
      std::sqrt(std::max(sol.covariance(1, 1), 0.0));
  fit.half_visibility_mismatch_um =
      model::half_visibility_mismatch_um({.center_wavelength_nm = center_wavelength_nm,
                                          .coherence_length_um = fit.coherence_length_um});
  fit.chi_square_per_dof = n > 2 ? sol.chi_square / (n - 2) : 0.0;

  double reach = 0.0;
  for (const auto& p : points) reach = std::max(reach, std::abs(p.path_mismatch_um));
  if (reach < fit.half_visibility_mismatch_um) {
    std::ostringstream msg;
    msg << "envelope points reach " << reach
        << " um but the half-visibility mismatch is "
        << fit.half_visibility_mismatch_um << " um";
    throw InsufficientDataError(msg.str());
  }
  return fit;
}

}  // namespace franson::analysis
