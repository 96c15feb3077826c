#pragma once

#include <span>

namespace franson::analysis {

struct EnvelopePoint {
  double path_mismatch_um = 0.0;
  double visibility = 0.0;
  double uncertainty = 0.0;
};

// V(d) = peak_visibility * exp(-(lambda d / (2 pi L_c))^2).
struct EnvelopeFit {
  double coherence_length_um = 0.0;
  double coherence_length_uncertainty_um = 0.0;
  double peak_visibility = 0.0;
  double peak_visibility_uncertainty = 0.0;
  double half_visibility_mismatch_um = 0.0;
  double chi_square_per_dof = 0.0;
};

// Weighted fit of the Gaussian envelope. Needs at least 5 points with
// positive uncertainty, and the mismatches must reach past the fitted
// half-visibility point; InsufficientDataError otherwise.
EnvelopeFit fit_envelope(std::span<const EnvelopePoint> points,
                         double center_wavelength_nm);

}  // namespace franson::analysis
