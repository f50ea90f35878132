#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "helpers.hpp"
#include "loam/bootstrap.hpp"
#include "loam/planner.hpp"
#include "loam/report.hpp"
#include "loam/simulate.hpp"
#include "loam/version.hpp"
#include "schema_check.hpp"

using Json = nlohmann::json;
using loam::Design;
using loam::Provenance;
using loam::ReportOptions;

namespace {

Provenance test_provenance() {
  Provenance p;
  p.input_digest = loam::fnv1a64_hex(loam::fnv1a64("input bytes"));
  p.tool_version = loam::kVersion;
  return p;
}

loam::RunReport example_report(bool with_differences) {
  ReportOptions options;
  options.emit_differences = with_differences;
  return loam::analyze(helpers::table3_ct(), options, test_provenance());
}

}  // namespace

TEST_CASE("analyze agrees with the underlying building blocks") {
  const auto grid = helpers::table3_ct();
  const auto report = example_report(false);
  const auto anova = loam::decompose(grid);
  const Design d = grid.design();

  CHECK(report.design == d);
  CHECK(report.anova.ss_b == anova.ss_b);
  CHECK(report.anova.ms_e == anova.ms_e);
  CHECK(report.reproducibility.limit == loam::reproducibility_loam(anova, d).limit);
  CHECK(report.repeatability.limit == loam::repeatability_loam(anova, d).limit);
  const auto [upper, lower] = loam::gw_reproducibility_ci(anova, d);
  CHECK(report.reprod_upper_ci.lower == upper.lower);
  CHECK(report.reprod_upper_ci.upper == upper.upper);
  CHECK(report.reprod_lower_ci.lower == lower.lower);
  CHECK_FALSE(report.has_differences);
  CHECK(report.subject_labels == grid.subject_labels());
  CHECK(report.provenance.input_digest == test_provenance().input_digest);

  const auto with_diffs = example_report(true);
  CHECK(with_diffs.has_differences);
  CHECK(with_diffs.diff_subject.differences.size() == 8);
  CHECK(with_diffs.diff_cell.differences.size() == 8);
}

TEST_CASE("run report JSON carries the analysis verbatim") {
  const auto report = example_report(false);
  const auto parsed = Json::parse(loam::render_report_json(report));

  CHECK(parsed["schema"] == "loam/run_report/v1");
  CHECK(parsed["tool_version"] == loam::kVersion);
  CHECK(parsed["input_digest"] == report.provenance.input_digest);
  CHECK(parsed["design"]["subjects"] == 2);
  CHECK(parsed["design"]["n_total"] == 8);
  CHECK(parsed["anova"]["rows"][0]["source"] == "subjects");
  CHECK(parsed["anova"]["rows"][1]["source"] == "observers");
  CHECK(parsed["anova"]["rows"][2]["source"] == "interaction");
  CHECK(parsed["anova"]["rows"][3]["source"] == "residual");
  CHECK(parsed["anova"]["rows"][0]["ss"].get<double>() == report.anova.ss_a);
  CHECK(parsed["loam"]["reproducibility"]["limit"].get<double>() ==
        report.reproducibility.limit);
  CHECK(parsed["loam"]["repeatability"]["upper_ci"]["lower"].get<double>() ==
        report.repeat_upper_ci.lower);

  // The observer component is negative here, so its interval is absent.
  CHECK(parsed["sigma_ci"]["observers"]["available"] == false);
  CHECK_FALSE(parsed["sigma_ci"]["observers"].contains("lower"));
  CHECK_FALSE(parsed["sigma_ci"]["observers"].contains("upper"));
  CHECK(parsed["sigma_ci"]["subjects"]["clamped"] == true);
  CHECK(parsed["sigma_ci"]["subjects"]["lower"].get<double>() == 0.0);
  CHECK(parsed["variance_components"]["observers"]["truncated"] == true);
  CHECK(parsed["variance_components"]["observers"]["raw"].get<double>() ==
        report.components.sigma2_b_raw);
  CHECK_FALSE(parsed.contains("differences"));
  CHECK_FALSE(parsed.contains("seed"));
}

TEST_CASE("run report JSON validates against its schema") {
  const auto schema = schema_check::load_schema("run_report.schema.json");
  for (const bool with_diffs : {false, true}) {
    const auto report = example_report(with_diffs);
    const auto parsed = Json::parse(loam::render_report_json(report));
    const auto errors = schema_check::validate(schema, parsed);
    for (const auto& e : errors) FAIL_CHECK(e);
    CHECK(errors.empty());
  }

  // A clean dataset without truncation or clamping also conforms.
  const auto grid = loam::simulate(loam::ModelParams{5.0, 2.0, 1.5, 1.0, 0.8},
                                   Design{25, 6, 3}, 424242);
  Provenance p;
  p.tool_version = loam::kVersion;
  const auto clean = loam::analyze(grid, ReportOptions{}, p);
  const auto errors = schema_check::validate(schema, Json::parse(loam::render_report_json(clean)));
  for (const auto& e : errors) FAIL_CHECK(e);
  CHECK(errors.empty());
}

TEST_CASE("the schema checker itself rejects broken documents") {
  const auto schema = schema_check::load_schema("run_report.schema.json");
  auto doc = Json::parse(loam::render_report_json(example_report(false)));

  auto missing = doc;
  missing.erase("anova");
  CHECK_FALSE(schema_check::validate(schema, missing).empty());

  auto extra = doc;
  extra["surprise"] = 1;
  CHECK_FALSE(schema_check::validate(schema, extra).empty());

  auto wrong_enum = doc;
  wrong_enum["anova"]["rows"][0]["source"] = "rows";
  CHECK_FALSE(schema_check::validate(schema, wrong_enum).empty());

  auto wrong_type = doc;
  wrong_type["design"]["subjects"] = "two";
  CHECK_FALSE(schema_check::validate(schema, wrong_type).empty());

  auto below_min = doc;
  below_min["design"]["subjects"] = 1;
  CHECK_FALSE(schema_check::validate(schema, below_min).empty());
}

TEST_CASE("run report text lists rows in a fixed order with readable limits") {
  const auto text = loam::render_report_text(example_report(false));
  const auto pos = [&](const char* needle) { return text.find(needle); };
  REQUIRE(pos("ANOVA") != std::string::npos);
  CHECK(pos("subjects") < pos("observers"));
  CHECK(pos("observers") < pos("interaction"));
  CHECK(pos("interaction") < pos("residual"));
  CHECK(pos("reproducibility  +/-0.718481") != std::string::npos);
  CHECK(pos("repeatability    +/-0.154952") != std::string::npos);
  CHECK(pos("unavailable (raw estimate <= 0)") != std::string::npos);
  CHECK(pos("lower clamped at 0") != std::string::npos);
  CHECK(pos("Design: a=2 subjects, b=2 observers, c=2 replicates (N=8)") != std::string::npos);
  // Differences appear only on request.
  CHECK(pos("Differences") == std::string::npos);
  const auto with_diffs = loam::render_report_text(example_report(true));
  CHECK(with_diffs.find("Differences") != std::string::npos);
  CHECK(with_diffs.find("S1,O1,1,") != std::string::npos);
}

TEST_CASE("comparison report JSON validates and carries the result") {
  const loam::PairedStudy study(helpers::table3_ct(), helpers::table3_mri());
  const auto result = loam::bootstrap_compare(study, loam::LoamKind::repeatability, 200, 42);
  Provenance p = test_provenance();
  p.has_seed = true;
  p.seed = 42;
  const auto json_text = loam::render_comparison_json(result, p, "CT", "MRI", 1.96);
  const auto parsed = Json::parse(json_text);

  CHECK(parsed["schema"] == "loam/comparison/v1");
  CHECK(parsed["kind"] == "repeatability");
  CHECK(parsed["methods"]["x"] == "CT");
  CHECK(parsed["methods"]["y"] == "MRI");
  CHECK(parsed["limit_x"].get<double>() == result.limit_x);
  CHECK(parsed["observed_diff"].get<double>() == result.observed_diff);
  CHECK(parsed["ci_95"][0].get<double>() == result.ci_95.first);
  CHECK(parsed["ci_95"][1].get<double>() == result.ci_95.second);
  CHECK(parsed["p_value"].get<double>() == result.p_value);
  CHECK(parsed["seed"] == 42);

  const auto errors =
      schema_check::validate(schema_check::load_schema("comparison.schema.json"), parsed);
  for (const auto& e : errors) FAIL_CHECK(e);
  CHECK(errors.empty());

  const auto text = loam::render_comparison_text(result, p, "CT", "MRI", 1.96);
  CHECK(text.find("Comparison of CT and MRI (repeatability limit") != std::string::npos);
  CHECK(text.find("p-value") != std::string::npos);
}

TEST_CASE("planning report JSON validates in both outcomes") {
  const auto schema = schema_check::load_schema("planning.schema.json");
  const loam::PilotEstimates pilot{0.0, 0.0, 1.0};

  loam::PlanningReport solved;
  solved.pilot = pilot;
  solved.solving_observers = true;
  solved.fixed_subjects = 10;
  solved.fixed_replicates = 2;
  solved.target_width = 0.65;
  solved.solution = loam::solve_observers(pilot, 10, 2, 0.65);
  REQUIRE(solved.solution.achievable);
  REQUIRE(solved.solution.solved == 5);
  solved.has_previous = true;
  solved.width_at_previous = loam::projected_width(pilot, 10, 4, 2).width;

  auto parsed = Json::parse(loam::render_planning_json(solved));
  CHECK(parsed["solution"] == 5);
  CHECK(parsed["achievable"] == true);
  CHECK(parsed["width_at_solution"].get<double>() == solved.solution.projection.width);
  CHECK(parsed["width_at_previous"].get<double>() == solved.width_at_previous);
  CHECK(parsed["fixed"]["subjects"] == 10);
  CHECK_FALSE(parsed["fixed"].contains("observers"));
  auto errors = schema_check::validate(schema, parsed);
  for (const auto& e : errors) FAIL_CHECK(e);
  CHECK(errors.empty());

  loam::PlanningReport blocked = solved;
  blocked.target_width = 1e-5;
  blocked.cap = 40;
  blocked.solution = loam::solve_observers(pilot, 10, 2, 1e-5, 40);
  blocked.has_previous = false;
  REQUIRE_FALSE(blocked.solution.achievable);
  parsed = Json::parse(loam::render_planning_json(blocked));
  CHECK(parsed["achievable"] == false);
  CHECK_FALSE(parsed.contains("solution"));
  CHECK(parsed["width_at_cap"].get<double>() == blocked.solution.projection.width);
  errors = schema_check::validate(schema, parsed);
  for (const auto& e : errors) FAIL_CHECK(e);
  CHECK(errors.empty());

  const auto text = loam::render_planning_text(solved);
  CHECK(text.find("Solution: 5 observers") != std::string::npos);
  const auto blocked_text = loam::render_planning_text(blocked);
  CHECK(blocked_text.find("Not achievable") != std::string::npos);
}

TEST_CASE("truth sidecar JSON validates and matches the closed forms") {
  const loam::ModelParams params{0.0, 5.0, 0.0, 0.0, 1.0};
  const Design d{10, 2, 2};
  const auto truth = loam::true_loam(params, d);
  const auto parsed = Json::parse(loam::render_truth_sidecar_json(params, d, truth, 7, 1.96));

  CHECK(parsed["schema"] == "loam/simulation_truth/v1");
  CHECK(parsed["seed"] == 7);
  CHECK(parsed["params"]["sigma_a"].get<double>() == 5.0);
  CHECK(parsed["design"]["n_total"] == 40);
  CHECK(parsed["true_loam"]["reproducibility_limit"].get<double>() ==
        truth.reproducibility_limit);
  CHECK(parsed["true_loam"]["repeatability_limit"].get<double>() == truth.repeatability_limit);

  const auto errors =
      schema_check::validate(schema_check::load_schema("simulation_truth.schema.json"), parsed);
  for (const auto& e : errors) FAIL_CHECK(e);
  CHECK(errors.empty());
}

TEST_CASE("digests are stable, byte-exact, and chainable") {
  // Standard reference values for this hash construction.
  CHECK(loam::fnv1a64("") == 14695981039346656037ULL);
  CHECK(loam::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(loam::fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(loam::fnv1a64_hex(loam::fnv1a64("")) == "fnv1a64:cbf29ce484222325");

  // Chaining through the basis equals hashing the concatenation, which is
  // how two-file inputs get a single digest.
  const std::string x = "first file\n";
  const std::string y = "second file\n";
  CHECK(loam::fnv1a64(y, loam::fnv1a64(x)) == loam::fnv1a64(x + y));

  CHECK(loam::fnv1a64("abc") != loam::fnv1a64("acb"));
}
