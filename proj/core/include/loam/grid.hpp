#pragma once

#include <span>
#include <string>
#include <vector>

#include "loam/design.hpp"

namespace loam {

/// One row of long-format data: a single measurement with its labels.
struct LongRecord {
  std::string subject;
  std::string observer;
  int replicate = 0;  // 1-based within the cell
  double value = 0.0;
};

/// Balanced, complete grid of measurements, immutable after construction.
/// Values are stored row-major as (subject, observer, replicate); all means
/// are precomputed so sharing a grid across threads needs no synchronization.
class MeasurementGrid {
 public:
  /// `values` is the dense a*b*c array with index (i*b + j)*c + k.
  /// Throws DegenerateDesign, NonFiniteValue, or DomainError on bad input.
  MeasurementGrid(Design design, std::vector<double> values,
                  std::vector<std::string> subject_labels,
                  std::vector<std::string> observer_labels);

  const Design& design() const { return design_; }
  std::span<const double> values() const { return values_; }

  double value(int i, int j, int k) const {
    return values_[static_cast<std::size_t>((i * design_.observers + j) * design_.replicates + k)];
  }

  const std::vector<std::string>& subject_labels() const { return subject_labels_; }
  const std::vector<std::string>& observer_labels() const { return observer_labels_; }

  double grand_mean() const { return grand_mean_; }
  double subject_mean(int i) const { return subject_means_[static_cast<std::size_t>(i)]; }
  double observer_mean(int j) const { return observer_means_[static_cast<std::size_t>(j)]; }
  double cell_mean(int i, int j) const {
    return cell_means_[static_cast<std::size_t>(i * design_.observers + j)];
  }

  /// All values of subject i as one contiguous block (b*c doubles).
  std::span<const double> subject_block(int i) const {
    const auto bc = static_cast<std::size_t>(design_.observers * design_.replicates);
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(i) * bc, bc);
  }

  /// Serializes back to long format, one record per measurement, in
  /// (subject, observer, replicate) order.
  std::vector<LongRecord> to_long() const;

 private:
  Design design_;
  std::vector<double> values_;
  std::vector<std::string> subject_labels_;
  std::vector<std::string> observer_labels_;
  std::vector<double> cell_means_;      // a*b
  std::vector<double> subject_means_;   // a
  std::vector<double> observer_means_;  // b
  double grand_mean_ = 0.0;
};

/// Groups long records into a balanced grid. Subject and observer order
/// follow first appearance; replicate order follows the replicate index.
/// Throws UnbalancedDesign, DegenerateDesign, DuplicateCell, NonFiniteValue,
/// or DomainError (empty input).
MeasurementGrid ingest_long(std::span<const LongRecord> records);

/// Per-cell means as an a x b row-major array.
std::vector<double> cell_means(const MeasurementGrid& grid);

}  // namespace loam
