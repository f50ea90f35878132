#pragma once

#include <utility>

#include "loam/anova.hpp"

namespace loam {

enum class IntervalTarget {
  reprod_upper,
  reprod_lower,
  repeat_upper,
  repeat_lower,
  sigma_a,
  sigma_b,
  sigma_ab,
  sigma_e,
};

enum class IntervalMethod { graybill_wang, exact_chisq, normal_approx };

struct IntervalResult {
  IntervalTarget target = IntervalTarget::reprod_upper;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  IntervalMethod method = IntervalMethod::graybill_wang;
  bool available = true;
  // True when a normal-approximation lower endpoint was raised to zero.
  bool clamped = false;
};

/// Per-row coefficients l_x = 1 - 1/F_{1-alpha/2; nu_x, inf} and
/// h_x = 1/F_{alpha/2; nu_x, inf} - 1 for the observer, interaction, and
/// residual rows. All satisfy 0 < l_x < 1 and h_x > 0; levels low enough
/// to break that (roughly below 0.4) are rejected with DomainError.
struct GwCoefficients {
  double l_b = 0.0;
  double l_ab = 0.0;
  double l_e = 0.0;
  double h_b = 0.0;
  double h_ab = 0.0;
  double h_e = 0.0;
};

GwCoefficients gw_coefficients(const Design& design, double level = 0.95);

/// Confidence intervals for the upper and lower reproducibility limits
/// (returned in that order). With S = SSB + SSAB + SSE, the upper-limit
/// interval is (z sqrt((S-L)/N), z sqrt((S+H)/N)); the lower-limit
/// interval is its negated, order-swapped mirror. `level` sets the
/// interval's quantile tails; `z` stays the agreement-limit multiplier.
std::pair<IntervalResult, IntervalResult> gw_reproducibility_ci(const AnovaDecomposition& anova,
                                                                const Design& design,
                                                                double level = 0.95,
                                                                double z = 1.96);

/// Exact chi-square intervals for the upper and lower repeatability limits
/// (returned in that order).
std::pair<IntervalResult, IntervalResult> exact_repeatability_ci(const AnovaDecomposition& anova,
                                                                 const Design& design,
                                                                 double level = 0.95,
                                                                 double z = 1.96);

enum class SigmaComponent { A, B, AB, E };

/// Confidence interval for a variance-component standard deviation:
/// normal approximation for A, B, AB (unavailable when the raw estimate
/// is nonpositive, lower endpoint clamped at zero), exact chi-square
/// for E.
IntervalResult sigma_ci(const VarianceComponents& components, const AnovaDecomposition& anova,
                        const Design& design, SigmaComponent which, double level = 0.95);

}  // namespace loam
