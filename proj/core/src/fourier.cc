#include "franson/analysis/fourier.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "franson/error.h"

namespace franson::analysis {

FourierReport fourier_significant_frequencies(std::span<const FringePoint> points,
                                              double threshold_sigma) {
  const std::size_t n = points.size();
  if (n < 4) {
    throw InvalidInputError("Fourier check needs at least 4 points");
  }
  const double step = points[1].phase_rad - points[0].phase_rad;
  if (!(step > 0.0)) {
    throw InvalidInputError("phase settings must be strictly increasing");
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double d = points[i].phase_rad - points[i - 1].phase_rad;
    if (std::abs(d - step) > 1e-9 * std::max(1.0, step)) {
      throw InvalidInputError("phase settings are not uniformly spaced at index " +
                              std::to_string(i));
    }
  }

  FourierReport report;
  report.threshold_sigma = threshold_sigma;
  const std::size_t bins = n / 2;
  double dc = 0.0;
  for (const auto& p : points) dc += p.counts;
  for (std::size_t k = 1; k <= bins; ++k) {
    std::complex<double> acc{};
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * i) /
                           static_cast<double>(n);
      acc += points[i].counts * std::polar(1.0, angle);
    }
    report.magnitudes.push_back(std::abs(acc));
    // k cycles over n * step radians.
    report.frequencies.push_back(2.0 * std::numbers::pi * static_cast<double>(k) /
                                 (static_cast<double>(n) * step));
  }

  // Rounding noise on exactly flat or exactly sinusoidal data is not a peak.
  const double floor = 1e-9 * std::max(std::abs(dc), 1.0);
  for (std::size_t k = 0; k < bins; ++k) {
    double sum = 0.0;
    double sum2 = 0.0;
    std::size_t m = 0;
    for (std::size_t j = 0; j < bins; ++j) {
      if (j == k) continue;
      sum += report.magnitudes[j];
      sum2 += report.magnitudes[j] * report.magnitudes[j];
      ++m;
    }
    double threshold = 0.0;
    if (m > 0) {
      const double mean = sum / static_cast<double>(m);
      const double var = std::max(sum2 / static_cast<double>(m) - mean * mean, 0.0);
      threshold = mean + threshold_sigma * std::sqrt(var);
    }
    if (report.magnitudes[k] > threshold && report.magnitudes[k] > floor) {
      report.significant_frequencies.push_back(report.frequencies[k]);
    }
  }
  return report;
}

FourierReport fourier_significant_frequencies(
    std::span<const mc::CountRecord> records, double threshold_sigma) {
  const auto points = fringe_points(records);
  return fourier_significant_frequencies(points, threshold_sigma);
}

}  // namespace franson::analysis
