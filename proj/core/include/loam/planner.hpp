#pragma once

namespace loam {

/// Pilot variance components that seed the width projection. Residual
/// variance must be positive; the others may be zero.
struct PilotEstimates {
  double sigma2_b0 = 0.0;
  double sigma2_ab0 = 0.0;
  double sigma2_e0 = 1.0;
};

/// Expected confidence-interval width of the upper reproducibility limit
/// for an a x b x c study, together with the projected sums of squares and
/// the interval bounds the width came from.
struct WidthProjection {
  int a = 0;
  int b = 0;
  int c = 0;
  double width = 0.0;
  double ssb0 = 0.0;
  double ssab0 = 0.0;
  double sse0 = 0.0;
  double h0 = 0.0;
  double l0 = 0.0;
};

/// Substitutes expected sums of squares (SSB0 = nu_B(ac s2_b0 + c s2_ab0 +
/// s2_e0), SSAB0 = nu_AB(c s2_ab0 + s2_e0), SSE0 = nu_E s2_e0) into the
/// interval construction and returns its width
///   W = (z/sqrt(N)) (sqrt(S0+H0) - sqrt(S0-L0)).
/// Throws DomainError for a, b, or c < 2 or invalid pilot values.
WidthProjection projected_width(const PilotEstimates& pilot, int a, int b, int c,
                                double level = 0.95, double z = 1.96);

struct PlannerSolution {
  bool achievable = false;
  int solved = 0;              // solved count when achievable
  WidthProjection projection;  // at `solved`, or at the search cap when not achievable
};

/// Smallest number of observers b in [2, b_max] whose projected width is
/// at or below target_width. The width is treated as decreasing in b
/// (bracket doubling plus bisection); if the bracket turns out
/// non-monotone the scan falls back to exhaustive. When even b_max cannot
/// reach the target, the result is not achievable and carries the width
/// at b_max.
PlannerSolution solve_observers(const PilotEstimates& pilot, int a, int c, double target_width,
                                int b_max = 10000, double level = 0.95, double z = 1.96);

/// Convenience counterpart solving for the number of subjects a with b
/// and c fixed, using the same width function. This goes beyond the
/// planning question the projection was built for; note that the width
/// approaches a positive floor as a grows, so tight targets are often
/// not achievable by adding subjects alone.
PlannerSolution solve_subjects(const PilotEstimates& pilot, int b, int c, double target_width,
                               int a_max = 10000, double level = 0.95, double z = 1.96);

}  // namespace loam
