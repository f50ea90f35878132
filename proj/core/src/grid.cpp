#include "loam/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace loam {

MeasurementGrid::MeasurementGrid(Design design, std::vector<double> values,
                                 std::vector<std::string> subject_labels,
                                 std::vector<std::string> observer_labels)
    : design_(design),
      values_(std::move(values)),
      subject_labels_(std::move(subject_labels)),
      observer_labels_(std::move(observer_labels)) {
  design_.validate();
  const auto a = static_cast<std::size_t>(design_.subjects);
  const auto b = static_cast<std::size_t>(design_.observers);
  const auto c = static_cast<std::size_t>(design_.replicates);

  if (values_.size() != a * b * c) {
    throw DomainError("value array has " + std::to_string(values_.size()) + " entries, expected " +
                      std::to_string(a * b * c));
  }
  if (subject_labels_.size() != a || observer_labels_.size() != b) {
    throw DomainError("label count does not match the design");
  }
  for (const double v : values_) {
    if (!std::isfinite(v)) throw NonFiniteValue("grid value is not finite");
  }
  const auto unique = [](const std::vector<std::string>& labels) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) return false;
    }
    return true;
  };
  if (!unique(subject_labels_)) throw DomainError("subject labels are not unique");
  if (!unique(observer_labels_)) throw DomainError("observer labels are not unique");

  // Cell sums first, everything else derived from them in fixed index order.
  cell_means_.assign(a * b, 0.0);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      double sum = 0.0;
      const std::size_t base = (i * b + j) * c;
      for (std::size_t k = 0; k < c; ++k) sum += values_[base + k];
      cell_means_[i * b + j] = sum / static_cast<double>(c);
    }
  }
  subject_means_.assign(a, 0.0);
  for (std::size_t i = 0; i < a; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < b; ++j) sum += cell_means_[i * b + j];
    subject_means_[i] = sum / static_cast<double>(b);
  }
  observer_means_.assign(b, 0.0);
  for (std::size_t j = 0; j < b; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a; ++i) sum += cell_means_[i * b + j];
    observer_means_[j] = sum / static_cast<double>(a);
  }
  double total = 0.0;
  for (const double v : values_) total += v;
  grand_mean_ = total / static_cast<double>(a * b * c);
}

std::vector<LongRecord> MeasurementGrid::to_long() const {
  std::vector<LongRecord> out;
  out.reserve(values_.size());
  for (int i = 0; i < design_.subjects; ++i) {
    for (int j = 0; j < design_.observers; ++j) {
      for (int k = 0; k < design_.replicates; ++k) {
        out.push_back(LongRecord{subject_labels_[static_cast<std::size_t>(i)],
                                 observer_labels_[static_cast<std::size_t>(j)], k + 1,
                                 value(i, j, k)});
      }
    }
  }
  return out;
}

MeasurementGrid ingest_long(std::span<const LongRecord> records) {
  if (records.empty()) throw DomainError("no records to ingest");

  std::vector<std::string> subjects;
  std::vector<std::string> observers;
  std::unordered_map<std::string, int> subject_index;
  std::unordered_map<std::string, int> observer_index;

  for (const auto& r : records) {
    if (subject_index.emplace(r.subject, static_cast<int>(subjects.size())).second) {
      subjects.push_back(r.subject);
    }
    if (observer_index.emplace(r.observer, static_cast<int>(observers.size())).second) {
      observers.push_back(r.observer);
    }
    if (!std::isfinite(r.value)) {
      throw NonFiniteValue("measurement for subject '" + r.subject + "', observer '" + r.observer +
                           "', replicate " + std::to_string(r.replicate) + " is not finite");
    }
    if (r.replicate < 1) {
      throw UnbalancedDesign("replicate index must be >= 1, got " + std::to_string(r.replicate) +
                             " for subject '" + r.subject + "', observer '" + r.observer + "'");
    }
  }

  const int a = static_cast<int>(subjects.size());
  const int b = static_cast<int>(observers.size());

  // Replicates per cell, keyed by (subject, observer, replicate).
  std::map<std::pair<int, int>, std::map<int, double>> cells;
  for (const auto& r : records) {
    const int i = subject_index.at(r.subject);
    const int j = observer_index.at(r.observer);
    auto& cell = cells[{i, j}];
    if (!cell.emplace(r.replicate, r.value).second) {
      throw DuplicateCell("subject '" + r.subject + "', observer '" + r.observer +
                          "', replicate " + std::to_string(r.replicate) + " appears twice");
    }
  }

  if (cells.size() != static_cast<std::size_t>(a) * static_cast<std::size_t>(b)) {
    for (int i = 0; i < a; ++i) {
      for (int j = 0; j < b; ++j) {
        if (!cells.count({i, j})) {
          throw UnbalancedDesign("no measurements for subject '" + subjects[static_cast<std::size_t>(i)] +
                                 "', observer '" + observers[static_cast<std::size_t>(j)] + "'");
        }
      }
    }
  }

  const int c = static_cast<int>(cells.begin()->second.size());
  for (const auto& [key, cell] : cells) {
    const auto& [i, j] = key;
    if (static_cast<int>(cell.size()) != c) {
      throw UnbalancedDesign("subject '" + subjects[static_cast<std::size_t>(i)] + "', observer '" +
                             observers[static_cast<std::size_t>(j)] + "' has " +
                             std::to_string(cell.size()) + " replicates, expected " +
                             std::to_string(c));
    }
    // Indices must be exactly 1..c.
    int expected = 1;
    for (const auto& [rep, value] : cell) {
      (void)value;
      if (rep != expected) {
        throw UnbalancedDesign("subject '" + subjects[static_cast<std::size_t>(i)] + "', observer '" +
                               observers[static_cast<std::size_t>(j)] + "' is missing replicate " +
                               std::to_string(expected));
      }
      ++expected;
    }
  }

  if (a <= 1 || b <= 1 || c <= 1) {
    throw DegenerateDesign("need at least 2 subjects, 2 observers, 2 replicates; got a=" +
                           std::to_string(a) + " b=" + std::to_string(b) + " c=" +
                           std::to_string(c));
  }

  std::vector<double> values(static_cast<std::size_t>(a) * static_cast<std::size_t>(b) *
                             static_cast<std::size_t>(c));
  for (const auto& [key, cell] : cells) {
    const auto& [i, j] = key;
    for (const auto& [rep, value] : cell) {
      values[static_cast<std::size_t>((i * b + j) * c + (rep - 1))] = value;
    }
  }
  return MeasurementGrid(Design{a, b, c}, std::move(values), std::move(subjects),
                         std::move(observers));
}

std::vector<double> cell_means(const MeasurementGrid& grid) {
  const auto& d = grid.design();
  std::vector<double> out(static_cast<std::size_t>(d.subjects) * static_cast<std::size_t>(d.observers));
  for (int i = 0; i < d.subjects; ++i) {
    for (int j = 0; j < d.observers; ++j) {
      out[static_cast<std::size_t>(i * d.observers + j)] = grid.cell_mean(i, j);
    }
  }
  return out;
}

}  // namespace loam
