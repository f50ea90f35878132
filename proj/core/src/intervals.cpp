#include "loam/intervals.hpp"

#include <cmath>
#include <string>

#include "loam/errors.hpp"
#include "loam/quantiles.hpp"

namespace loam {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("confidence level must lie in (0,1), got " + std::to_string(level));
  }
}

struct GwBounds {
  double s = 0.0;
  double l = 0.0;
  double h = 0.0;
};

GwBounds gw_bounds(const AnovaDecomposition& anova, const GwCoefficients& k) {
  GwBounds b;
  b.s = anova.ss_b + anova.ss_ab + anova.ss_e;
  b.l = std::sqrt(k.l_b * k.l_b * anova.ss_b * anova.ss_b +
                  k.l_ab * k.l_ab * anova.ss_ab * anova.ss_ab +
                  k.l_e * k.l_e * anova.ss_e * anova.ss_e);
  b.h = std::sqrt(k.h_b * k.h_b * anova.ss_b * anova.ss_b +
                  k.h_ab * k.h_ab * anova.ss_ab * anova.ss_ab +
                  k.h_e * k.h_e * anova.ss_e * anova.ss_e);
  return b;
}

}  // namespace

GwCoefficients gw_coefficients(const Design& design, double level) {
  design.validate();
  check_level(level);
  const double alpha = 1.0 - level;
  const auto low = [&](double nu) { return 1.0 - 1.0 / f_quantile_inf_denominator(1.0 - alpha / 2.0, nu); };
  const auto high = [&](double nu) { return 1.0 / f_quantile_inf_denominator(alpha / 2.0, nu) - 1.0; };

  GwCoefficients k;
  k.l_b = low(design.df_observers());
  k.l_ab = low(design.df_interaction());
  k.l_e = low(design.df_residual());
  k.h_b = high(design.df_observers());
  k.h_ab = high(design.df_interaction());
  k.h_e = high(design.df_residual());
  for (double l : {k.l_b, k.l_ab, k.l_e}) {
    if (!(l > 0.0 && l < 1.0)) {
      throw DomainError("confidence level too low for the squared-sums interval construction");
    }
  }
  for (double h : {k.h_b, k.h_ab, k.h_e}) {
    if (!(h > 0.0)) {
      throw DomainError("confidence level too low for the squared-sums interval construction");
    }
  }
  return k;
}

std::pair<IntervalResult, IntervalResult> gw_reproducibility_ci(const AnovaDecomposition& anova,
                                                                const Design& design, double level,
                                                                double z) {
  const GwCoefficients k = gw_coefficients(design, level);
  const GwBounds b = gw_bounds(anova, k);
  const double n = design.total();
  const double lo = z * std::sqrt((b.s - b.l) / n);
  const double hi = z * std::sqrt((b.s + b.h) / n);

  IntervalResult upper;
  upper.target = IntervalTarget::reprod_upper;
  upper.lower = lo;
  upper.upper = hi;
  upper.level = level;
  upper.method = IntervalMethod::graybill_wang;

  IntervalResult lower = upper;
  lower.target = IntervalTarget::reprod_lower;
  lower.lower = -hi;
  lower.upper = -lo;
  return {upper, lower};
}

std::pair<IntervalResult, IntervalResult> exact_repeatability_ci(const AnovaDecomposition& anova,
                                                                 const Design& design, double level,
                                                                 double z) {
  design.validate();
  check_level(level);
  const double alpha = 1.0 - level;
  const double nu_e = design.df_residual();
  const double chi_hi = chisq_quantile(1.0 - alpha / 2.0, nu_e);
  const double chi_lo = chisq_quantile(alpha / 2.0, nu_e);
  const double scaled = (design.replicates - 1.0) / design.replicates * anova.ss_e;
  const double lo = z * std::sqrt(scaled / chi_hi);
  const double hi = z * std::sqrt(scaled / chi_lo);

  IntervalResult upper;
  upper.target = IntervalTarget::repeat_upper;
  upper.lower = lo;
  upper.upper = hi;
  upper.level = level;
  upper.method = IntervalMethod::exact_chisq;

  IntervalResult lower = upper;
  lower.target = IntervalTarget::repeat_lower;
  lower.lower = -hi;
  lower.upper = -lo;
  return {upper, lower};
}

IntervalResult sigma_ci(const VarianceComponents& components, const AnovaDecomposition& anova,
                        const Design& design, SigmaComponent which, double level) {
  design.validate();
  check_level(level);
  const double alpha = 1.0 - level;
  const double a = design.subjects;
  const double b = design.observers;
  const double c = design.replicates;

  IntervalResult out;
  out.level = level;

  if (which == SigmaComponent::E) {
    out.target = IntervalTarget::sigma_e;
    out.method = IntervalMethod::exact_chisq;
    const double nu_e = design.df_residual();
    const double ss = nu_e * anova.ms_e;
    out.lower = std::sqrt(ss / chisq_quantile(1.0 - alpha / 2.0, nu_e));
    out.upper = std::sqrt(ss / chisq_quantile(alpha / 2.0, nu_e));
    return out;
  }

  out.method = IntervalMethod::normal_approx;
  double raw = 0.0;
  double divisor = 0.0;
  double term1 = 0.0;
  double term2 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  switch (which) {
    case SigmaComponent::A:
      out.target = IntervalTarget::sigma_a;
      raw = components.sigma2_a_raw;
      divisor = b * c;
      term1 = b * c * components.sigma2_a_raw + c * components.sigma2_ab_raw + components.sigma2_e;
      term2 = c * components.sigma2_ab_raw + components.sigma2_e;
      nu1 = design.df_subjects();
      nu2 = design.df_interaction();
      break;
    case SigmaComponent::B:
      out.target = IntervalTarget::sigma_b;
      raw = components.sigma2_b_raw;
      divisor = a * c;
      term1 = a * c * components.sigma2_b_raw + c * components.sigma2_ab_raw + components.sigma2_e;
      term2 = c * components.sigma2_ab_raw + components.sigma2_e;
      nu1 = design.df_observers();
      nu2 = design.df_interaction();
      break;
    case SigmaComponent::AB:
      out.target = IntervalTarget::sigma_ab;
      raw = components.sigma2_ab_raw;
      divisor = c;
      term1 = c * components.sigma2_ab_raw + components.sigma2_e;
      term2 = components.sigma2_e;
      nu1 = design.df_interaction();
      nu2 = design.df_residual();
      break;
    case SigmaComponent::E:
      break;
  }

  if (!(raw > 0.0)) {
    out.available = false;
    return out;
  }
  const double sigma = std::sqrt(raw);
  const double m = normal_quantile(1.0 - alpha / 2.0);
  const double half = m / (divisor * sigma) *
                      std::sqrt(term1 * term1 / (2.0 * nu1) + term2 * term2 / (2.0 * nu2));
  out.lower = sigma - half;
  out.upper = sigma + half;
  if (out.lower < 0.0) {
    out.lower = 0.0;
    out.clamped = true;
  }
  return out;
}

}  // namespace loam
