#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loam/anova.hpp"
#include "loam/bootstrap.hpp"
#include "loam/estimators.hpp"
#include "loam/grid.hpp"
#include "loam/intervals.hpp"
#include "loam/planner.hpp"
#include "loam/simulate.hpp"

namespace loam {

struct ReportOptions {
  double level = 0.95;
  double z = 1.96;
  bool emit_differences = false;
};

/// Where a result came from: digest of the exact input bytes, the tool
/// version, and the seed for randomized commands.
struct Provenance {
  std::string input_digest;  // "fnv1a64:<16 hex>", empty when no file input
  std::string tool_version;
  bool has_seed = false;
  std::uint64_t seed = 0;
};

/// Full single-dataset analysis: the decomposition, variance components,
/// both agreement limits with both confidence-interval pairs, the four
/// standard-deviation intervals, and (optionally) the per-datum
/// difference series.
struct RunReport {
  Design design;
  AnovaDecomposition anova;
  VarianceComponents components;
  LoamEstimate reproducibility;
  LoamEstimate repeatability;
  IntervalResult reprod_upper_ci;
  IntervalResult reprod_lower_ci;
  IntervalResult repeat_upper_ci;
  IntervalResult repeat_lower_ci;
  IntervalResult sigma_a_ci;
  IntervalResult sigma_b_ci;
  IntervalResult sigma_ab_ci;
  IntervalResult sigma_e_ci;
  bool has_differences = false;
  DifferenceSeries diff_subject;
  DifferenceSeries diff_cell;
  std::vector<std::string> subject_labels;
  std::vector<std::string> observer_labels;
  ReportOptions options;
  Provenance provenance;
};

RunReport analyze(const MeasurementGrid& grid, const ReportOptions& options,
                  Provenance provenance);

/// Inputs and outcome of one planner run, ready for rendering.
struct PlanningReport {
  PilotEstimates pilot;
  bool solving_observers = true;  // false when solving for subjects
  int fixed_subjects = 0;         // used when solving observers
  int fixed_observers = 0;        // used when solving subjects
  int fixed_replicates = 0;
  double target_width = 0.0;
  int cap = 10000;
  double level = 0.95;
  double z = 1.96;
  PlannerSolution solution;
  bool has_previous = false;      // width one step below the solution
  double width_at_previous = 0.0;
};

std::string render_report_json(const RunReport& report);
std::string render_report_text(const RunReport& report);

std::string render_comparison_json(const ComparisonResult& result, const Provenance& provenance,
                                   std::string_view method_x, std::string_view method_y, double z);
std::string render_comparison_text(const ComparisonResult& result, const Provenance& provenance,
                                   std::string_view method_x, std::string_view method_y, double z);

std::string render_planning_json(const PlanningReport& report);
std::string render_planning_text(const PlanningReport& report);

/// Sidecar written next to simulated datasets so downstream coverage
/// checks know the generating truth.
std::string render_truth_sidecar_json(const ModelParams& params, const Design& design,
                                      const TrueLoam& truth, std::uint64_t seed, double z);

/// FNV-1a 64-bit digest of raw bytes; `fnv1a64_hex` renders it as the
/// "fnv1a64:<16 hex>" provenance string.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 14695981039346656037ULL);
std::string fnv1a64_hex(std::uint64_t digest);

}  // namespace loam
