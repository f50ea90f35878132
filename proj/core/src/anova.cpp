#include "loam/anova.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "loam/errors.hpp"

namespace loam {

namespace {

// Means are computed with plain accumulation over contiguous ranges; the
// sums of squares below are always centered differences (two-pass), never
// the expanded sum-of-squares-minus-correction form.
double sum(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

}  // namespace

AnovaDecomposition decompose_values(std::span<const double> values, const Design& design) {
  design.validate();
  const int a = design.subjects;
  const int b = design.observers;
  const int c = design.replicates;
  const std::size_t n = static_cast<std::size_t>(design.total());
  if (values.size() != n) {
    throw MismatchedDesign("value count " + std::to_string(values.size()) +
                           " does not match design total " + std::to_string(n));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw NonFiniteValue("non-finite measurement value");
  }

  const double grand = sum(values) / static_cast<double>(n);

  std::vector<double> cell(static_cast<std::size_t>(a) * b, 0.0);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const std::size_t base = (static_cast<std::size_t>(i) * b + j) * c;
      cell[static_cast<std::size_t>(i) * b + j] = sum(values.subspan(base, c)) / c;
    }
  }

  std::vector<double> subj(a, 0.0);
  std::vector<double> obs(b, 0.0);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double m = cell[static_cast<std::size_t>(i) * b + j];
      subj[i] += m;
      obs[j] += m;
    }
  }
  for (int i = 0; i < a; ++i) subj[i] /= b;
  for (int j = 0; j < b; ++j) obs[j] /= a;

  double ss_a = 0.0;
  for (int i = 0; i < a; ++i) {
    const double d = subj[i] - grand;
    ss_a += d * d;
  }
  ss_a *= static_cast<double>(b) * c;

  double ss_b = 0.0;
  for (int j = 0; j < b; ++j) {
    const double d = obs[j] - grand;
    ss_b += d * d;
  }
  ss_b *= static_cast<double>(a) * c;

  double ss_cells = 0.0;
  for (double m : cell) {
    const double d = m - grand;
    ss_cells += d * d;
  }
  ss_cells *= c;
  double ss_ab = ss_cells - ss_a - ss_b;

  double ss_e = 0.0;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double m = cell[static_cast<std::size_t>(i) * b + j];
      const std::size_t base = (static_cast<std::size_t>(i) * b + j) * c;
      for (int k = 0; k < c; ++k) {
        const double d = values[base + k] - m;
        ss_e += d * d;
      }
    }
  }

  double ss_t = 0.0;
  for (double v : values) {
    const double d = v - grand;
    ss_t += d * d;
  }

  // The interaction sum is a difference of rounded quantities and can dip
  // a hair below zero on interaction-free data; anything worse than noise
  // relative to the total is a logic error, not rounding.
  if (ss_ab < 0.0) {
    if (-ss_ab <= 1e-9 * ss_t) {
      ss_ab = 0.0;
    } else {
      throw std::logic_error("interaction sum of squares is negative beyond rounding noise");
    }
  }

  AnovaDecomposition out;
  out.ss_a = ss_a;
  out.ss_b = ss_b;
  out.ss_ab = ss_ab;
  out.ss_e = ss_e;
  out.df_a = design.df_subjects();
  out.df_b = design.df_observers();
  out.df_ab = design.df_interaction();
  out.df_e = design.df_residual();
  out.ms_a = ss_a / out.df_a;
  out.ms_b = ss_b / out.df_b;
  out.ms_ab = ss_ab / out.df_ab;
  out.ms_e = ss_e / out.df_e;
  return out;
}

AnovaDecomposition decompose(const MeasurementGrid& grid) {
  return decompose_values(grid.values(), grid.design());
}

VarianceComponents estimate_components(const AnovaDecomposition& anova, const Design& design) {
  design.validate();
  const double bc = static_cast<double>(design.observers) * design.replicates;
  const double ac = static_cast<double>(design.subjects) * design.replicates;
  const double c = design.replicates;

  VarianceComponents v;
  v.sigma2_a_raw = (anova.ms_a - anova.ms_ab) / bc;
  v.sigma2_b_raw = (anova.ms_b - anova.ms_ab) / ac;
  v.sigma2_ab_raw = (anova.ms_ab - anova.ms_e) / c;
  v.sigma2_e = anova.ms_e;

  v.truncated_a = v.sigma2_a_raw < 0.0;
  v.truncated_b = v.sigma2_b_raw < 0.0;
  v.truncated_ab = v.sigma2_ab_raw < 0.0;
  v.sigma2_a = v.truncated_a ? 0.0 : v.sigma2_a_raw;
  v.sigma2_b = v.truncated_b ? 0.0 : v.sigma2_b_raw;
  v.sigma2_ab = v.truncated_ab ? 0.0 : v.sigma2_ab_raw;
  return v;
}

}  // namespace loam
