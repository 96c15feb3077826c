#include "franson/model/model.h"

#include <cmath>
#include <string>

#include "franson/error.h"

namespace franson::model {

namespace {

double convention_factor(CoherenceConvention convention, double factor) {
  switch (convention) {
    case CoherenceConvention::kGaussianFwhm:
      return 2.0 * std::numbers::ln2 / std::numbers::pi;
    case CoherenceConvention::kPaperCalibrated:
      if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw InvalidInputError("convention factor must be positive");
      }
      return factor;
  }
  throw InvalidInputError("unknown coherence convention");
}

}  // namespace

CoherenceConvention parse_convention(std::string_view name) {
  if (name == "gaussian-fwhm") return CoherenceConvention::kGaussianFwhm;
  if (name == "paper-calibrated") return CoherenceConvention::kPaperCalibrated;
  throw InvalidInputError("unknown coherence convention '" + std::string(name) +
                          "' (expected gaussian-fwhm or paper-calibrated)");
}

std::string_view to_string(CoherenceConvention convention) {
  switch (convention) {
    case CoherenceConvention::kGaussianFwhm:
      return "gaussian-fwhm";
    case CoherenceConvention::kPaperCalibrated:
      return "paper-calibrated";
  }
  return "unknown";
}

void validate(const SpectralParams& spec) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(spec.center_wavelength_nm)) {
    throw ValidationError("SpectralParams.center_wavelength", "must be > 0");
  }
  if (!positive(spec.bandwidth_fwhm_nm)) {
    throw ValidationError("SpectralParams.bandwidth_fwhm", "must be > 0");
  }
  if (!positive(spec.coherence_length_um)) {
    throw ValidationError("SpectralParams.coherence_length", "must be > 0");
  }
}

void validate(const VisibilityParams& vis) {
  const double v = vis.apparatus_visibility;
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError("VisibilityParams.apparatus_visibility",
                          "must lie in [0, 1]");
  }
}

double envelope(double path_mismatch_um, const SpectralParams& spec) {
  const double lambda_um = spec.center_wavelength_nm * 1e-3;
  const double x = lambda_um * path_mismatch_um /
                   (2.0 * std::numbers::pi * spec.coherence_length_um);
  return std::exp(-x * x);
}

double effective_visibility(const PhaseSetting& phases,
                            const SpectralParams& spec,
                            const VisibilityParams& vis) {
  return vis.apparatus_visibility * envelope(phases.path_mismatch_um, spec);
}

double coincidence_probability(OutcomeLabel outcome, const PhaseSetting& phases,
                               const SpectralParams& spec,
                               const VisibilityParams& vis) {
  const double ij = value(outcome.i) * value(outcome.j);
  return 0.25 * (1.0 + ij * effective_visibility(phases, spec, vis) *
                           std::cos(phases.phase_sum()));
}

JointOutcome joint_outcome_distribution(const PhaseSetting& phases,
                                        const SpectralParams& spec,
                                        const VisibilityParams& vis) {
  const double c =
      effective_visibility(phases, spec, vis) * std::cos(phases.phase_sum());
  JointOutcome out;
  out.p[0][0] = 0.25 * (1.0 + c);
  out.p[1][1] = 0.25 * (1.0 + c);
  out.p[0][1] = 0.25 * (1.0 - c);
  out.p[1][0] = 0.25 * (1.0 - c);
  return out;
}

double raw_visibility_with_accidentals(double net_visibility,
                                       double mean_true_coincidences,
                                       double mean_accidentals) {
  if (mean_true_coincidences < 0.0 || mean_accidentals < 0.0) {
    throw InvalidInputError("coincidence means must be non-negative");
  }
  const double total = mean_true_coincidences + mean_accidentals;
  if (total == 0.0) {
    throw InvalidInputError(
        "raw visibility undefined: true + accidental coincidences is zero");
  }
  return net_visibility * mean_true_coincidences / total;
}

double bell_violation_sigma(double visibility, double visibility_uncertainty) {
  if (!(visibility_uncertainty > 0.0)) {
    throw InvalidInputError("visibility uncertainty must be > 0");
  }
  return (visibility - kBellThreshold) / visibility_uncertainty;
}

double coherence_length_from_bandwidth(double center_wavelength_nm,
                                       double bandwidth_fwhm_nm,
                                       CoherenceConvention convention,
                                       double factor) {
  if (!(center_wavelength_nm > 0.0) || !(bandwidth_fwhm_nm > 0.0)) {
    throw InvalidInputError("wavelength and bandwidth must be positive");
  }
  const double k = convention_factor(convention, factor);
  // nm^2 / nm = nm; report micrometres.
  return k * center_wavelength_nm * center_wavelength_nm / bandwidth_fwhm_nm *
         1e-3;
}

double bandwidth_from_coherence_length(double center_wavelength_nm,
                                       double coherence_length_um,
                                       CoherenceConvention convention,
                                       double factor) {
  if (!(center_wavelength_nm > 0.0) || !(coherence_length_um > 0.0)) {
    throw InvalidInputError("wavelength and coherence length must be positive");
  }
  const double k = convention_factor(convention, factor);
  return k * center_wavelength_nm * center_wavelength_nm /
         (coherence_length_um * 1e3);
}

double half_visibility_mismatch_um(const SpectralParams& spec) {
  return 2.0 * std::numbers::pi * spec.coherence_length_um *
         std::sqrt(std::numbers::ln2) / (spec.center_wavelength_nm * 1e-3);
}

}  // namespace franson::model
