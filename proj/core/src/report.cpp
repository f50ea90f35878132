#include "loam/report.hpp"

#include <cstdio>

#include <json.hpp>

#include "loam/errors.hpp"
#include "loam/version.hpp"

namespace loam {

namespace {

using Json = nlohmann::ordered_json;

const char* method_name(IntervalMethod m) {
  switch (m) {
    case IntervalMethod::graybill_wang:
      return "graybill_wang";
    case IntervalMethod::exact_chisq:
      return "exact_chisq";
    case IntervalMethod::normal_approx:
      return "normal_approx";
  }
  return "unknown";
}

const char* kind_name(LoamKind k) {
  return k == LoamKind::reproducibility ? "reproducibility" : "repeatability";
}

Json interval_json(const IntervalResult& ci) {
  Json j;
  j["available"] = ci.available;
  if (ci.available) {
    j["lower"] = ci.lower;
    j["upper"] = ci.upper;
  }
  j["level"] = ci.level;
  j["method"] = method_name(ci.method);
  if (ci.clamped) j["clamped"] = true;
  return j;
}

Json anova_json(const AnovaDecomposition& a) {
  Json rows = Json::array();
  const auto row = [](const char* source, double ss, int df, double ms) {
    Json j;
    j["source"] = source;
    j["ss"] = ss;
    j["df"] = df;
    j["ms"] = ms;
    return j;
  };
  rows.push_back(row("subjects", a.ss_a, a.df_a, a.ms_a));
  rows.push_back(row("observers", a.ss_b, a.df_b, a.ms_b));
  rows.push_back(row("interaction", a.ss_ab, a.df_ab, a.ms_ab));
  rows.push_back(row("residual", a.ss_e, a.df_e, a.ms_e));
  Json j;
  j["rows"] = std::move(rows);
  j["ss_total"] = a.ss_total();
  return j;
}

Json components_json(const VarianceComponents& v) {
  Json j;
  j["subjects"] = {{"raw", v.sigma2_a_raw}, {"estimate", v.sigma2_a}, {"truncated", v.truncated_a}};
  j["observers"] = {{"raw", v.sigma2_b_raw}, {"estimate", v.sigma2_b}, {"truncated", v.truncated_b}};
  j["interaction"] = {
      {"raw", v.sigma2_ab_raw}, {"estimate", v.sigma2_ab}, {"truncated", v.truncated_ab}};
  j["residual"] = {{"estimate", v.sigma2_e}};
  return j;
}

Json differences_json(const DifferenceSeries& series, const RunReport& report) {
  Json arr = Json::array();
  for (const DifferenceEntry& e : series.differences) {
    Json j;
    j["subject"] = report.subject_labels[static_cast<std::size_t>(e.subject)];
    j["observer"] = report.observer_labels[static_cast<std::size_t>(e.observer)];
    j["replicate"] = e.replicate + 1;
    j["difference"] = e.difference;
    arr.push_back(std::move(j));
  }
  return arr;
}

void put_provenance(Json& j, const Provenance& p) {
  j["tool_version"] = p.tool_version;
  if (!p.input_digest.empty()) j["input_digest"] = p.input_digest;
  if (p.has_seed) j["seed"] = p.seed;
}

// Fixed-width text helpers; text output trades digits for readability,
// JSON carries full precision.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string interval_text(const IntervalResult& ci) {
  if (!ci.available) return "unavailable (raw estimate <= 0)";
  std::string s = "(" + fmt(ci.lower) + ", " + fmt(ci.upper) + ")  [" + method_name(ci.method) +
                  "]";
  if (ci.clamped) s += "  lower clamped at 0";
  return s;
}

}  // namespace

RunReport analyze(const MeasurementGrid& grid, const ReportOptions& options,
                  Provenance provenance) {
  RunReport r;
  r.design = grid.design();
  r.anova = decompose(grid);
  r.components = estimate_components(r.anova, r.design);
  r.reproducibility = reproducibility_loam(r.anova, r.design, options.z);
  r.repeatability = repeatability_loam(r.anova, r.design, options.z);
  const auto reprod = gw_reproducibility_ci(r.anova, r.design, options.level, options.z);
  r.reprod_upper_ci = reprod.first;
  r.reprod_lower_ci = reprod.second;
  const auto repeat = exact_repeatability_ci(r.anova, r.design, options.level, options.z);
  r.repeat_upper_ci = repeat.first;
  r.repeat_lower_ci = repeat.second;
  r.sigma_a_ci = sigma_ci(r.components, r.anova, r.design, SigmaComponent::A, options.level);
  r.sigma_b_ci = sigma_ci(r.components, r.anova, r.design, SigmaComponent::B, options.level);
  r.sigma_ab_ci = sigma_ci(r.components, r.anova, r.design, SigmaComponent::AB, options.level);
  r.sigma_e_ci = sigma_ci(r.components, r.anova, r.design, SigmaComponent::E, options.level);
  if (options.emit_differences) {
    r.has_differences = true;
    r.diff_subject = difference_series(grid, DifferenceKind::to_subject_mean);
    r.diff_cell = difference_series(grid, DifferenceKind::to_cell_mean);
  }
  r.subject_labels = grid.subject_labels();
  r.observer_labels = grid.observer_labels();
  r.options = options;
  r.provenance = std::move(provenance);
  return r;
}

std::string render_report_json(const RunReport& report) {
  Json j;
  j["schema"] = "loam/run_report/v1";
  put_provenance(j, report.provenance);
  j["design"] = {{"subjects", report.design.subjects},
                 {"observers", report.design.observers},
                 {"replicates", report.design.replicates},
                 {"n_total", report.design.total()}};
  j["options"] = {{"level", report.options.level}, {"z", report.options.z}};
  j["anova"] = anova_json(report.anova);
  j["variance_components"] = components_json(report.components);

  Json loam;
  loam["reproducibility"] = {{"limit", report.reproducibility.limit},
                             {"z", report.reproducibility.z},
                             {"upper_ci", interval_json(report.reprod_upper_ci)},
                             {"lower_ci", interval_json(report.reprod_lower_ci)}};
  loam["repeatability"] = {{"limit", report.repeatability.limit},
                           {"z", report.repeatability.z},
                           {"upper_ci", interval_json(report.repeat_upper_ci)},
                           {"lower_ci", interval_json(report.repeat_lower_ci)}};
  j["loam"] = std::move(loam);

  j["sigma_ci"] = {{"subjects", interval_json(report.sigma_a_ci)},
                   {"observers", interval_json(report.sigma_b_ci)},
                   {"interaction", interval_json(report.sigma_ab_ci)},
                   {"residual", interval_json(report.sigma_e_ci)}};

  if (report.has_differences) {
    j["differences"] = {{"to_subject_mean", differences_json(report.diff_subject, report)},
                        {"to_cell_mean", differences_json(report.diff_cell, report)}};
  }
  return j.dump(2) + "\n";
}

std::string render_report_text(const RunReport& report) {
  const auto& a = report.anova;
  std::string out;
  out += "Design: a=" + std::to_string(report.design.subjects) + " subjects, b=" +
         std::to_string(report.design.observers) + " observers, c=" +
         std::to_string(report.design.replicates) + " replicates (N=" +
         std::to_string(report.design.total()) + ")\n";
  out += "Tool version: " + report.provenance.tool_version + "\n";
  if (!report.provenance.input_digest.empty()) {
    out += "Input digest: " + report.provenance.input_digest + "\n";
  }
  out += "\nANOVA\n";
  out += pad("source", 13) + pad("SS", 15) + pad("df", 6) + "MS\n";
  const auto anova_row = [&](const char* source, double ss, int df, double ms) {
    out += pad(source, 13) + pad(fmt(ss), 15) + pad(std::to_string(df), 6) + fmt(ms) + "\n";
  };
  anova_row("subjects", a.ss_a, a.df_a, a.ms_a);
  anova_row("observers", a.ss_b, a.df_b, a.ms_b);
  anova_row("interaction", a.ss_ab, a.df_ab, a.ms_ab);
  anova_row("residual", a.ss_e, a.df_e, a.ms_e);
  out += pad("total", 13) + fmt(a.ss_total()) + "\n";

  const auto& v = report.components;
  out += "\nVariance components\n";
  const auto comp_row = [&](const char* name, double raw, double est, bool truncated) {
    out += pad(name, 13) + pad("raw " + fmt(raw), 20) + "estimate " + fmt(est) +
           (truncated ? "  (truncated)" : "") + "\n";
  };
  comp_row("subjects", v.sigma2_a_raw, v.sigma2_a, v.truncated_a);
  comp_row("observers", v.sigma2_b_raw, v.sigma2_b, v.truncated_b);
  comp_row("interaction", v.sigma2_ab_raw, v.sigma2_ab, v.truncated_ab);
  out += pad("residual", 13) + "estimate " + fmt(v.sigma2_e) + "\n";

  char header[96];
  std::snprintf(header, sizeof(header),
                "\nLimits of agreement with the mean (z=%s, level=%s)\n",
                fmt(report.options.z).c_str(), fmt(report.options.level).c_str());
  out += header;
  out += "reproducibility  +/-" + fmt(report.reproducibility.limit) + "\n";
  out += "  upper limit CI: " + interval_text(report.reprod_upper_ci) + "\n";
  out += "  lower limit CI: " + interval_text(report.reprod_lower_ci) + "\n";
  out += "repeatability    +/-" + fmt(report.repeatability.limit) + "\n";
  out += "  upper limit CI: " + interval_text(report.repeat_upper_ci) + "\n";
  out += "  lower limit CI: " + interval_text(report.repeat_lower_ci) + "\n";

  out += "\nStandard deviation CIs\n";
  out += pad("subjects", 13) + interval_text(report.sigma_a_ci) + "\n";
  out += pad("observers", 13) + interval_text(report.sigma_b_ci) + "\n";
  out += pad("interaction", 13) + interval_text(report.sigma_ab_ci) + "\n";
  out += pad("residual", 13) + interval_text(report.sigma_e_ci) + "\n";

  if (report.has_differences) {
    out += "\nDifferences (subject, observer, replicate, to subject mean, to cell mean)\n";
    for (std::size_t n = 0; n < report.diff_subject.differences.size(); ++n) {
      const DifferenceEntry& s = report.diff_subject.differences[n];
      const DifferenceEntry& c = report.diff_cell.differences[n];
      out += report.subject_labels[static_cast<std::size_t>(s.subject)] + "," +
             report.observer_labels[static_cast<std::size_t>(s.observer)] + "," +
             std::to_string(s.replicate + 1) + "," + fmt(s.difference) + "," + fmt(c.difference) +
             "\n";
    }
  }
  return out;
}

std::string render_comparison_json(const ComparisonResult& result, const Provenance& provenance,
                                   std::string_view method_x, std::string_view method_y,
                                   double z) {
  Json j;
  j["schema"] = "loam/comparison/v1";
  put_provenance(j, provenance);
  j["kind"] = kind_name(result.kind);
  j["methods"] = {{"x", std::string(method_x)}, {"y", std::string(method_y)}};
  j["z"] = z;
  j["limit_x"] = result.limit_x;
  j["limit_y"] = result.limit_y;
  j["observed_diff"] = result.observed_diff;
  j["boot_diffs"] = {{"count", result.boot_diffs.count}, {"mean", result.boot_diffs.mean},
                     {"sd", result.boot_diffs.sd},       {"p2_5", result.boot_diffs.p2_5},
                     {"p50", result.boot_diffs.p50},     {"p97_5", result.boot_diffs.p97_5}};
  j["ci_95"] = {result.ci_95.first, result.ci_95.second};
  j["p_value"] = result.p_value;
  j["n_resamples"] = result.n_resamples;
  j["seed"] = result.seed;
  return j.dump(2) + "\n";
}

std::string render_comparison_text(const ComparisonResult& result, const Provenance& provenance,
                                   std::string_view method_x, std::string_view method_y,
                                   double z) {
  std::string out;
  out += "Comparison of " + std::string(method_x) + " and " + std::string(method_y) + " (" +
         kind_name(result.kind) + " limit, z=" + fmt(z) + ")\n";
  out += "Tool version: " + provenance.tool_version + "\n";
  if (!provenance.input_digest.empty()) out += "Input digest: " + provenance.input_digest + "\n";
  out += "Seed: " + std::to_string(result.seed) + "\n\n";
  out += pad("limit " + std::string(method_x), 24) + fmt(result.limit_x) + "\n";
  out += pad("limit " + std::string(method_y), 24) + fmt(result.limit_y) + "\n";
  out += pad("observed difference", 24) + fmt(result.observed_diff) + "\n";
  out += pad("bootstrap 95% CI", 24) + "(" + fmt(result.ci_95.first) + ", " +
         fmt(result.ci_95.second) + ")\n";
  out += pad("p-value", 24) + fmt(result.p_value) + "\n";
  out += pad("resamples", 24) + std::to_string(result.n_resamples) + "\n";
  out += pad("bootstrap mean, sd", 24) + fmt(result.boot_diffs.mean) + ", " +
         fmt(result.boot_diffs.sd) + "\n";
  return out;
}

std::string render_planning_json(const PlanningReport& report) {
  Json j;
  j["schema"] = "loam/planning/v1";
  j["tool_version"] = std::string(kVersion);
  j["pilot"] = {{"sigma2_b0", report.pilot.sigma2_b0},
                {"sigma2_ab0", report.pilot.sigma2_ab0},
                {"sigma2_e0", report.pilot.sigma2_e0}};
  j["solve_for"] = report.solving_observers ? "observers" : "subjects";
  if (report.solving_observers) {
    j["fixed"] = {{"subjects", report.fixed_subjects}, {"replicates", report.fixed_replicates}};
  } else {
    j["fixed"] = {{"observers", report.fixed_observers}, {"replicates", report.fixed_replicates}};
  }
  j["target_width"] = report.target_width;
  j["search_cap"] = report.cap;
  j["level"] = report.level;
  j["z"] = report.z;
  j["achievable"] = report.solution.achievable;
  const WidthProjection& p = report.solution.projection;
  if (report.solution.achievable) {
    j["solution"] = report.solution.solved;
    j["width_at_solution"] = p.width;
    if (report.has_previous) j["width_at_previous"] = report.width_at_previous;
  } else {
    j["width_at_cap"] = p.width;
  }
  j["projection"] = {{"subjects", p.a}, {"observers", p.b}, {"replicates", p.c},
                     {"ssb0", p.ssb0},  {"ssab0", p.ssab0}, {"sse0", p.sse0},
                     {"l0", p.l0},      {"h0", p.h0}};
  return j.dump(2) + "\n";
}

std::string render_planning_text(const PlanningReport& report) {
  std::string out;
  const char* axis = report.solving_observers ? "observers" : "subjects";
  out += "Sample-size planning: smallest number of ";
  out += axis;
  out += " with projected CI width <= " + fmt(report.target_width) + "\n";
  if (report.solving_observers) {
    out += "Fixed: a=" + std::to_string(report.fixed_subjects) + " subjects, c=" +
           std::to_string(report.fixed_replicates) + " replicates\n";
  } else {
    out += "Fixed: b=" + std::to_string(report.fixed_observers) + " observers, c=" +
           std::to_string(report.fixed_replicates) + " replicates\n";
  }
  out += "Pilot variances: sigma2_b0=" + fmt(report.pilot.sigma2_b0) + ", sigma2_ab0=" +
         fmt(report.pilot.sigma2_ab0) + ", sigma2_e0=" + fmt(report.pilot.sigma2_e0) + "\n";
  out += "Level: " + fmt(report.level) + ", z=" + fmt(report.z) + "\n\n";
  if (report.solution.achievable) {
    out += "Solution: " + std::to_string(report.solution.solved) + " " + axis + "\n";
    out += "Projected width there: " + fmt(report.solution.projection.width) + "\n";
    if (report.has_previous) {
      out += "Projected width one step below: " + fmt(report.width_at_previous) +
             " (above target)\n";
    }
  } else {
    out += "Not achievable within cap " + std::to_string(report.cap) + ": width at the cap is " +
           fmt(report.solution.projection.width) + "\n";
  }
  return out;
}

std::string render_truth_sidecar_json(const ModelParams& params, const Design& design,
                                      const TrueLoam& truth, std::uint64_t seed, double z) {
  Json j;
  j["schema"] = "loam/simulation_truth/v1";
  j["tool_version"] = std::string(kVersion);
  j["seed"] = seed;
  j["params"] = {{"mu", params.mu},
                 {"sigma_a", params.sigma_a},
                 {"sigma_b", params.sigma_b},
                 {"sigma_ab", params.sigma_ab},
                 {"sigma_e", params.sigma_e}};
  j["design"] = {{"subjects", design.subjects},
                 {"observers", design.observers},
                 {"replicates", design.replicates},
                 {"n_total", design.total()}};
  j["z"] = z;
  j["true_loam"] = {{"reproducibility_limit", truth.reproducibility_limit},
                    {"repeatability_limit", truth.repeatability_limit}};
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::uint64_t digest) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

}  // namespace loam
