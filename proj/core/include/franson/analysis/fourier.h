#pragma once

#include <span>
#include <vector>

#include "franson/analysis/fringe_fit.h"

namespace franson::analysis {

struct FourierReport {
  // Frequencies in cycles per 2 pi of phase, one entry per significant bin.
  std::vector<double> significant_frequencies;
  // |X_k| for k = 1 .. N/2, and the matching frequencies.
  std::vector<double> magnitudes;
  std::vector<double> frequencies;
  double threshold_sigma = 5.0;

  std::size_t significant_count() const { return significant_frequencies.size(); }
};

// Magnitude spectrum of uniformly spaced counts, zero frequency excluded. Bin
// k is significant when |X_k| exceeds mean + threshold_sigma * stddev of the
// other non-zero bins. Throws InvalidInputError for non-uniform spacing or
// fewer than 4 points.
FourierReport fourier_significant_frequencies(std::span<const FringePoint> points,
                                              double threshold_sigma = 5.0);
FourierReport fourier_significant_frequencies(
    std::span<const mc::CountRecord> records, double threshold_sigma = 5.0);

}  // namespace franson::analysis
