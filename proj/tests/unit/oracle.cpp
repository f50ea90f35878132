#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace oracle {

namespace {

// sum of squared deviations from the mean via the pairwise identity
long double pairwise_ss(const std::vector<long double>& xs) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const long double d = xs[i] - xs[j];
      sum += d * d;
    }
  }
  return sum / static_cast<long double>(xs.size());
}

}  // namespace

Anova decompose(const std::vector<double>& values, int a, int b, int c) {
  const auto idx = [&](int i, int j, int k) {
    return (static_cast<std::size_t>(i) * b + j) * c + k;
  };

  std::vector<long double> subject_means(a, 0.0L);
  std::vector<long double> observer_means(b, 0.0L);
  std::vector<long double> cell_means(static_cast<std::size_t>(a) * b, 0.0L);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      long double s = 0.0L;
      for (int k = 0; k < c; ++k) s += values[idx(i, j, k)];
      const long double m = s / c;
      cell_means[static_cast<std::size_t>(i) * b + j] = m;
      subject_means[i] += m / b;
      observer_means[j] += m / a;
    }
  }

  Anova out;
  out.ss_a = static_cast<long double>(b) * c * pairwise_ss(subject_means);
  out.ss_b = static_cast<long double>(a) * c * pairwise_ss(observer_means);
  out.ss_ab = static_cast<long double>(c) * pairwise_ss(cell_means) - out.ss_a - out.ss_b;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      std::vector<long double> cell(static_cast<std::size_t>(c));
      for (int k = 0; k < c; ++k) cell[k] = values[idx(i, j, k)];
      out.ss_e += pairwise_ss(cell);
    }
  }
  std::vector<long double> all(values.begin(), values.end());
  out.ss_total = pairwise_ss(all);
  return out;
}

long double chisq_cdf(long double x, long double nu) {
  if (x <= 0.0L) return 0.0L;
  // With x = t^2 the integrand 2 t^(nu-1) exp(-t^2/2) / (2^(nu/2) Gamma(nu/2))
  // is smooth on [0, sqrt(x)] for nu >= 1.
  const long double upper = std::sqrt(x);
  const long double log_norm =
      -0.5L * nu * std::log(2.0L) - std::lgamma(static_cast<double>(nu) / 2.0);
  const auto integrand = [&](long double t) {
    if (t == 0.0L) {
      return nu == 1.0L ? 2.0L * std::exp(log_norm) : 0.0L;
    }
    return 2.0L * std::exp((nu - 1.0L) * std::log(t) - 0.5L * t * t + log_norm);
  };
  const int n = 200000;  // even
  const long double h = upper / n;
  long double sum = integrand(0.0L) + integrand(upper);
  for (int i = 1; i < n; ++i) {
    sum += (i % 2 == 1 ? 4.0L : 2.0L) * integrand(h * i);
  }
  return sum * h / 3.0L;
}

double ks_pvalue_standard_normal(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const std::size_t n = sample.size();
  long double d = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double cdf = 0.5L * std::erfc(-static_cast<long double>(sample[i]) /
                                             std::sqrt(2.0L));
    const long double lo = cdf - static_cast<long double>(i) / n;
    const long double hi = static_cast<long double>(i + 1) / n - cdf;
    d = std::max({d, lo, hi});
  }
  const long double sqrt_n = std::sqrt(static_cast<long double>(n));
  const long double lambda = (sqrt_n + 0.12L + 0.11L / sqrt_n) * d;
  long double p = 0.0L;
  for (int j = 1; j <= 200; ++j) {
    const long double term = std::exp(-2.0L * j * j * lambda * lambda);
    p += (j % 2 == 1 ? 2.0L : -2.0L) * term;
    if (term < 1e-30L) break;
  }
  return static_cast<double>(std::clamp(p, 0.0L, 1.0L));
}

}  // namespace oracle
