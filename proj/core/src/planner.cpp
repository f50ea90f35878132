#include "loam/planner.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "loam/design.hpp"
#include "loam/errors.hpp"
#include "loam/intervals.hpp"

namespace loam {

namespace {

void check_pilot(const PilotEstimates& p) {
  if (!(p.sigma2_b0 >= 0.0) || !(p.sigma2_ab0 >= 0.0) || !std::isfinite(p.sigma2_b0) ||
      !std::isfinite(p.sigma2_ab0)) {
    throw DomainError("pilot variances must be finite and nonnegative");
  }
  if (!(p.sigma2_e0 > 0.0) || !std::isfinite(p.sigma2_e0)) {
    throw DomainError("pilot residual variance must be positive");
  }
}

void check_count(int value, const char* name) {
  if (value < 2) {
    throw DomainError(std::string(name) + " must be at least 2, got " + std::to_string(value));
  }
}

// Generic smallest-k search over [2, cap] for a width function treated as
// decreasing in k. Bracket by doubling, bisect, then verify minimality;
// any sign of non-monotonicity falls back to a full scan.
PlannerSolution solve_smallest(const std::function<WidthProjection(int)>& width_at,
                               double target_width, int cap) {
  if (!(target_width > 0.0) || !std::isfinite(target_width)) {
    throw DomainError("target width must be positive");
  }
  check_count(cap, "search cap");

  const auto exhaustive = [&]() {
    PlannerSolution s;
    for (int k = 2; k <= cap; ++k) {
      WidthProjection w = width_at(k);
      if (w.width <= target_width) {
        s.achievable = true;
        s.solved = k;
        s.projection = w;
        return s;
      }
    }
    s.achievable = false;
    s.projection = width_at(cap);
    return s;
  };

  WidthProjection first = width_at(2);
  if (first.width <= target_width) {
    PlannerSolution s;
    s.achievable = true;
    s.solved = 2;
    s.projection = first;
    return s;
  }

  int lo = 2;  // width above target here
  int hi = 2;
  while (true) {
    if (hi >= cap) {
      WidthProjection at_cap = width_at(cap);
      if (at_cap.width > target_width) {
        PlannerSolution s;
        s.achievable = false;
        s.projection = at_cap;
        return s;
      }
      hi = cap;
      break;
    }
    lo = hi;
    hi = hi > cap / 2 ? cap : hi * 2;
    if (width_at(hi).width <= target_width) break;
  }

  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (width_at(mid).width <= target_width) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  WidthProjection at = width_at(hi);
  const bool minimal = hi == 2 || width_at(hi - 1).width > target_width;
  if (at.width <= target_width && minimal) {
    PlannerSolution s;
    s.achievable = true;
    s.solved = hi;
    s.projection = at;
    return s;
  }
  return exhaustive();
}

}  // namespace

WidthProjection projected_width(const PilotEstimates& pilot, int a, int b, int c, double level,
                                double z) {
  check_pilot(pilot);
  check_count(a, "subject count");
  check_count(b, "observer count");
  check_count(c, "replicate count");

  const Design design{a, b, c};
  const double nu_b = design.df_observers();
  const double nu_ab = design.df_interaction();
  const double nu_e = design.df_residual();

  WidthProjection w;
  w.a = a;
  w.b = b;
  w.c = c;
  w.ssb0 = nu_b * (static_cast<double>(a) * c * pilot.sigma2_b0 + c * pilot.sigma2_ab0 +
                   pilot.sigma2_e0);
  w.ssab0 = nu_ab * (c * pilot.sigma2_ab0 + pilot.sigma2_e0);
  w.sse0 = nu_e * pilot.sigma2_e0;

  const GwCoefficients k = gw_coefficients(design, level);
  const double s0 = w.ssb0 + w.ssab0 + w.sse0;
  w.l0 = std::sqrt(k.l_b * k.l_b * w.ssb0 * w.ssb0 + k.l_ab * k.l_ab * w.ssab0 * w.ssab0 +
                   k.l_e * k.l_e * w.sse0 * w.sse0);
  w.h0 = std::sqrt(k.h_b * k.h_b * w.ssb0 * w.ssb0 + k.h_ab * k.h_ab * w.ssab0 * w.ssab0 +
                   k.h_e * k.h_e * w.sse0 * w.sse0);
  const double n = design.total();
  w.width = z / std::sqrt(n) * (std::sqrt(s0 + w.h0) - std::sqrt(s0 - w.l0));
  return w;
}

PlannerSolution solve_observers(const PilotEstimates& pilot, int a, int c, double target_width,
                                int b_max, double level, double z) {
  check_pilot(pilot);
  check_count(a, "subject count");
  check_count(c, "replicate count");
  return solve_smallest(
      [&](int b) { return projected_width(pilot, a, b, c, level, z); }, target_width, b_max);
}

PlannerSolution solve_subjects(const PilotEstimates& pilot, int b, int c, double target_width,
                               int a_max, double level, double z) {
  check_pilot(pilot);
  check_count(b, "observer count");
  check_count(c, "replicate count");
  return solve_smallest(
      [&](int a) { return projected_width(pilot, a, b, c, level, z); }, target_width, a_max);
}

}  // namespace loam
