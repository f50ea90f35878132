#pragma once

namespace loam {

/// Standard normal cumulative distribution function.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF) via Wichura's PPND16 rational
/// approximations, accurate to about 1e-16 over (0,1).
double normal_quantile(double p);

/// Chi-square quantile with nu degrees of freedom, computed by inverting
/// the regularized incomplete gamma function with a guarded Halley
/// iteration. Relative accuracy is better than 1e-10 across the domain.
/// Throws DomainError for p outside (0,1) or nu <= 0.
double chisq_quantile(double p, double nu);

/// Quantile of the F distribution with nu numerator and infinite
/// denominator degrees of freedom; identically chisq_quantile(p, nu)/nu.
double f_quantile_inf_denominator(double p, double nu);

}  // namespace loam
