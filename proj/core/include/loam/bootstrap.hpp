#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "loam/estimators.hpp"
#include "loam/grid.hpp"
#include "loam/rng.hpp"

namespace loam {

/// Two measurement methods observed on the same subjects, observers, and
/// replicates. Construction enforces identical designs and labels.
struct PairedStudy {
  PairedStudy(MeasurementGrid x, MeasurementGrid y);

  MeasurementGrid grid_x;
  MeasurementGrid grid_y;
};

struct BootDistribution {
  int count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double p2_5 = 0.0;
  double p50 = 0.0;
  double p97_5 = 0.0;
};

struct ComparisonResult {
  LoamKind kind = LoamKind::reproducibility;
  double limit_x = 0.0;
  double limit_y = 0.0;
  double observed_diff = 0.0;  // limit_x - limit_y
  BootDistribution boot_diffs;
  double p_value = 1.0;
  std::pair<double, double> ci_95{0.0, 0.0};
  int n_resamples = 0;
  std::uint64_t seed = 0;
};

/// One subject-level resample: draws `a` subject indices uniformly with
/// replacement and copies each drawn subject's full observer-by-replicate
/// block from both grids in lockstep. Copies get fresh labels
/// "<original>#<position>" so the resample is again a valid balanced study.
PairedStudy resample_subjects(const PairedStudy& study, Rng& rng);

/// Bootstrap comparison of the two methods' agreement limits. The test
/// statistic is limit_x - limit_y; ci_95 is the percentile interval of the
/// resampled differences, and the p-value positions the observed
/// difference in the mean-recentered resample distribution with the +1
/// continuity correction. Resamples use one RNG substream per index, so
/// the result is bit-identical for a given seed regardless of thread
/// count. A resample whose values are all equal in either grid is redrawn
/// (at most 10 attempts per index) since its limits carry no information.
ComparisonResult bootstrap_compare(const PairedStudy& study, LoamKind kind,
                                   int n_resamples = 2000, std::uint64_t seed = 0,
                                   double z = 1.96, int threads = 0);

}  // namespace loam
