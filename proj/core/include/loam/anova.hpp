#pragma once

#include <span>

#include "loam/grid.hpp"

namespace loam {

/// Two-way decomposition with interaction: sums of squares, degrees of
/// freedom, and mean squares for the subject (A), observer (B),
/// interaction (AB), and residual (E) rows.
struct AnovaDecomposition {
  double ss_a = 0.0;
  double ss_b = 0.0;
  double ss_ab = 0.0;
  double ss_e = 0.0;
  int df_a = 0;
  int df_b = 0;
  int df_ab = 0;
  int df_e = 0;
  double ms_a = 0.0;
  double ms_b = 0.0;
  double ms_ab = 0.0;
  double ms_e = 0.0;

  double ss_total() const { return ss_a + ss_b + ss_ab + ss_e; }
};

/// Method-of-moments variance-component estimates. Raw values may be
/// negative; the truncated copies clamp at zero and flag when they did.
struct VarianceComponents {
  double sigma2_a_raw = 0.0;
  double sigma2_b_raw = 0.0;
  double sigma2_ab_raw = 0.0;
  double sigma2_e = 0.0;  // equals ms_e, never negative
  double sigma2_a = 0.0;
  double sigma2_b = 0.0;
  double sigma2_ab = 0.0;
  bool truncated_a = false;
  bool truncated_b = false;
  bool truncated_ab = false;
};

AnovaDecomposition decompose(const MeasurementGrid& grid);

/// Same decomposition on a bare value array laid out (subject, observer,
/// replicate) row-major. This is the hot path the bootstrap uses; the
/// grid overload forwards here.
AnovaDecomposition decompose_values(std::span<const double> values, const Design& design);

VarianceComponents estimate_components(const AnovaDecomposition& anova, const Design& design);

}  // namespace loam
