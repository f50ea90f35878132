#include "loam/estimators.hpp"

#include <cmath>

namespace loam {

LoamEstimate reproducibility_loam(const AnovaDecomposition& anova, const Design& design,
                                  double z) {
  design.validate();
  LoamEstimate e;
  e.kind = LoamKind::reproducibility;
  e.z = z;
  e.n_total = design.total();
  e.limit = z * std::sqrt((anova.ss_b + anova.ss_ab + anova.ss_e) / e.n_total);
  return e;
}

LoamEstimate repeatability_loam(const AnovaDecomposition& anova, const Design& design, double z) {
  design.validate();
  LoamEstimate e;
  e.kind = LoamKind::repeatability;
  e.z = z;
  e.n_total = design.total();
  e.limit = z * std::sqrt(anova.ss_e / e.n_total);
  return e;
}

DifferenceSeries difference_series(const MeasurementGrid& grid, DifferenceKind kind) {
  const Design& d = grid.design();
  DifferenceSeries series;
  series.kind = kind;
  series.differences.reserve(static_cast<std::size_t>(d.total()));
  for (int i = 0; i < d.subjects; ++i) {
    for (int j = 0; j < d.observers; ++j) {
      const double center = kind == DifferenceKind::to_subject_mean ? grid.subject_mean(i)
                                                                    : grid.cell_mean(i, j);
      for (int k = 0; k < d.replicates; ++k) {
        series.differences.push_back({i, j, k, grid.value(i, j, k) - center});
      }
    }
  }
  return series;
}

}  // namespace loam
