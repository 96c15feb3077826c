#pragma once

// Analytic two-photon statistics of a pair of unbalanced interferometers fed
// by energy-time entangled photons. Everything here is a pure function and
// doubles as the reference the Monte Carlo is checked against.

#include <array>
#include <numbers>
#include <string_view>

namespace franson::model {

inline constexpr double kBellThreshold = std::numbers::sqrt2 / 2.0;

// Convention factor k in L_c = k * lambda^2 / delta_lambda that maps the
// quoted 90 nm bandwidth onto the quoted 10.2 um coherence length.
inline constexpr double kPaperConventionFactor = 0.535;

enum class CoherenceConvention { kGaussianFwhm, kPaperCalibrated };

CoherenceConvention parse_convention(std::string_view name);
std::string_view to_string(CoherenceConvention convention);

struct SpectralParams {
  double center_wavelength_nm = 1310.0;
  double bandwidth_fwhm_nm = 90.0;
  double coherence_length_um = 10.2;
};

// delta1/delta2 are the interferometer phases. The envelope argument is the
// physical path-length mismatch between the two interferometers and is kept
// separate from the wrapped phases.
struct PhaseSetting {
  double delta1_rad = 0.0;
  double delta2_rad = 0.0;
  double path_mismatch_um = 0.0;

  double phase_sum() const { return delta1_rad + delta2_rad; }
};

enum class Sign : int { kPlus = +1, kMinus = -1 };

inline int value(Sign s) { return static_cast<int>(s); }

struct OutcomeLabel {
  Sign i = Sign::kPlus;
  Sign j = Sign::kPlus;
};

struct VisibilityParams {
  double apparatus_visibility = 1.0;
};

// Indexed [i][j] with index 0 = '+', 1 = '-'.
struct JointOutcome {
  std::array<std::array<double, 2>, 2> p{};

  double operator()(Sign i, Sign j) const {
    return p[i == Sign::kPlus ? 0 : 1][j == Sign::kPlus ? 0 : 1];
  }
  double sum() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
};

void validate(const SpectralParams& spec);
void validate(const VisibilityParams& vis);

// exp[-(lambda * mismatch / (2 pi L_c))^2]
double envelope(double path_mismatch_um, const SpectralParams& spec);

// V * envelope: the fringe contrast of the interfering subensemble.
double effective_visibility(const PhaseSetting& phases,
                            const SpectralParams& spec,
                            const VisibilityParams& vis);

// 1/4 (1 + i j V envelope cos(delta1 + delta2))
double coincidence_probability(OutcomeLabel outcome, const PhaseSetting& phases,
                               const SpectralParams& spec,
                               const VisibilityParams& vis);

JointOutcome joint_outcome_distribution(const PhaseSetting& phases,
                                        const SpectralParams& spec,
                                        const VisibilityParams& vis);

// Fringe contrast left after a flat accidental background A is added to a
// true-coincidence mean S: V S / (S + A).
double raw_visibility_with_accidentals(double net_visibility,
                                       double mean_true_coincidences,
                                       double mean_accidentals);

// (V - 1/sqrt2) / sigma_V, positive when the Bell inequality is violated.
double bell_violation_sigma(double visibility, double visibility_uncertainty);

// Coherence length in micrometres. The paper-calibrated convention uses
// `factor` as k; the Gaussian convention ignores it.
double coherence_length_from_bandwidth(
    double center_wavelength_nm, double bandwidth_fwhm_nm,
    CoherenceConvention convention,
    double factor = kPaperConventionFactor);

double bandwidth_from_coherence_length(
    double center_wavelength_nm, double coherence_length_um,
    CoherenceConvention convention,
    double factor = kPaperConventionFactor);

// Mismatch at which the envelope falls to one half: 2 pi L_c sqrt(ln 2) / lambda.
double half_visibility_mismatch_um(const SpectralParams& spec);

}  // namespace franson::model
