// Independent reference computations the tests check the library against.
// Nothing here may call into the library: sums of squares come from the
// pairwise-difference identity, distribution functions from direct
// numerical integration.
#pragma once

#include <vector>

namespace oracle {

struct Anova {
  long double ss_a = 0.0L;
  long double ss_b = 0.0L;
  long double ss_ab = 0.0L;
  long double ss_e = 0.0L;
  long double ss_total = 0.0L;
};

// O(N^2) decomposition of a values array laid out (subject, observer,
// replicate) row-major, using sum((x_i - mean)^2) = sum_ij (x_i - x_j)^2 / (2n).
Anova decompose(const std::vector<double>& values, int a, int b, int c);

// Chi-square CDF with nu degrees of freedom by composite Simpson
// integration of the density (substituted x = t^2 so nu = 1 stays finite).
long double chisq_cdf(long double x, long double nu);

// Two-sided Kolmogorov-Smirnov p-value of a sample against the standard
// normal distribution, with the finite-n adjusted statistic.
double ks_pvalue_standard_normal(std::vector<double> sample);

}  // namespace oracle
