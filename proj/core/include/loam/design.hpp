#pragma once

#include "loam/errors.hpp"

namespace loam {

/// Balanced study layout: every one of the `subjects` x `observers` cells
/// holds exactly `replicates` measurements.
///
/// Convention used throughout this library: a = number of subjects,
/// b = number of observers, c = replicates per subject-observer cell.
struct Design {
  int subjects = 0;    // a
  int observers = 0;   // b
  int replicates = 0;  // c

  int total() const { return subjects * observers * replicates; }  // N = abc

  // Degrees of freedom of the two-way decomposition.
  int df_subjects() const { return subjects - 1; }
  int df_observers() const { return observers - 1; }
  int df_interaction() const { return (subjects - 1) * (observers - 1); }
  int df_residual() const { return subjects * observers * (replicates - 1); }

  void validate() const {
    if (subjects <= 1 || observers <= 1 || replicates <= 1) {
      throw DegenerateDesign("need subjects > 1, observers > 1, replicates > 1; got a=" +
                             std::to_string(subjects) + " b=" + std::to_string(observers) +
                             " c=" + std::to_string(replicates));
    }
  }

  bool operator==(const Design&) const = default;
};

}  // namespace loam
