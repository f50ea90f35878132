#pragma once

#include <vector>

#include "loam/anova.hpp"
#include "loam/grid.hpp"

namespace loam {

enum class LoamKind { reproducibility, repeatability };

/// A symmetric ±limit agreement interval around zero for within-subject
/// differences, with the normal multiplier it was built from.
struct LoamEstimate {
  LoamKind kind = LoamKind::reproducibility;
  double limit = 0.0;
  double z = 1.96;
  int n_total = 0;
};

enum class DifferenceKind { to_subject_mean, to_cell_mean };

struct DifferenceEntry {
  int subject = 0;    // zero-based indices into the grid
  int observer = 0;
  int replicate = 0;
  double difference = 0.0;
};

struct DifferenceSeries {
  DifferenceKind kind = DifferenceKind::to_subject_mean;
  std::vector<DifferenceEntry> differences;
};

/// limit = z * sqrt((SSB + SSAB + SSE) / N). The sum-of-squares form is the
/// canonical path; the variance-component form of the same quantity is kept
/// to tests as a cross-check.
LoamEstimate reproducibility_loam(const AnovaDecomposition& anova, const Design& design,
                                  double z = 1.96);

/// limit = z * sqrt(SSE / N).
LoamEstimate repeatability_loam(const AnovaDecomposition& anova, const Design& design,
                                double z = 1.96);

/// Per-datum differences to the subject mean (reproducibility scale) or to
/// the cell mean (repeatability scale), in grid storage order.
DifferenceSeries difference_series(const MeasurementGrid& grid, DifferenceKind kind);

}  // namespace loam
