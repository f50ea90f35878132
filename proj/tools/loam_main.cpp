// Command-line frontend: estimate, samplesize, compare, simulate.
// Exit codes: 0 success, 1 internal failure, 2 bad input, 3 planning
// target not achievable.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "loam/bootstrap.hpp"
#include "loam/csv.hpp"
#include "loam/errors.hpp"
#include "loam/parallel.hpp"
#include "loam/planner.hpp"
#include "loam/report.hpp"
#include "loam/simulate.hpp"
#include "loam/version.hpp"

namespace {

// Input problems found by the tool itself (unreadable files, bad flag
// combinations); reported like the library's errors, exit code 2.
class InputError : public loam::Error {
 public:
  explicit InputError(const std::string& detail) : Error("InputError", detail) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw InputError("failed reading " + path);
  return std::move(buf).str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot open " + out_path + " for writing");
  out << text;
  if (!out.good()) throw InputError("failed writing " + out_path);
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct SeedOption {
  std::uint64_t value = 0;
  bool given = false;

  // Randomized commands always run from a known seed: the given one, or a
  // fresh one announced on stderr.
  std::uint64_t resolve() {
    if (!given) {
      value = fresh_seed();
      std::cerr << "note: generated seed " << value << "\n";
    }
    return value;
  }
};

loam::MeasurementGrid grid_from_long_file(const std::string& path, std::string* digest_text,
                                          std::string* method) {
  const std::string bytes = read_file(path);
  if (digest_text) *digest_text = loam::fnv1a64_hex(loam::fnv1a64(bytes));
  loam::LongCsv csv = loam::parse_long_csv(bytes);
  if (method) *method = csv.method;
  return loam::ingest_long(csv.records);
}

int run_estimate(const std::string& input, double level, double z, bool emit_differences,
                 const std::string& format, const std::string& out_path) {
  loam::Provenance prov;
  prov.tool_version = loam::kVersion;
  const loam::MeasurementGrid grid = grid_from_long_file(input, &prov.input_digest, nullptr);
  loam::ReportOptions options;
  options.level = level;
  options.z = z;
  options.emit_differences = emit_differences;
  const loam::RunReport report = loam::analyze(grid, options, std::move(prov));
  write_output(format == "json" ? loam::render_report_json(report)
                                : loam::render_report_text(report),
               out_path);
  return 0;
}

int run_samplesize(const loam::PilotEstimates& pilot, const std::string& solve_for, int a, int b,
                   int c, double target_width, int b_max, int a_max, double level, double z,
                   const std::string& format, const std::string& out_path) {
  loam::PlanningReport report;
  report.pilot = pilot;
  report.fixed_replicates = c;
  report.target_width = target_width;
  report.level = level;
  report.z = z;
  if (solve_for == "observers") {
    if (a < 2) throw InputError("--a is required (and must be >= 2) when solving for observers");
    report.solving_observers = true;
    report.fixed_subjects = a;
    report.cap = b_max;
    report.solution = loam::solve_observers(pilot, a, c, target_width, b_max, level, z);
  } else {
    if (b < 2) throw InputError("--b is required (and must be >= 2) when solving for subjects");
    report.solving_observers = false;
    report.fixed_observers = b;
    report.cap = a_max;
    report.solution = loam::solve_subjects(pilot, b, c, target_width, a_max, level, z);
  }
  if (report.solution.achievable && report.solution.solved >= 3) {
    report.has_previous = true;
    const int prev = report.solution.solved - 1;
    report.width_at_previous =
        (report.solving_observers
             ? loam::projected_width(pilot, a, prev, c, level, z)
             : loam::projected_width(pilot, prev, b, c, level, z))
            .width;
  }
  write_output(format == "json" ? loam::render_planning_json(report)
                                : loam::render_planning_text(report),
               out_path);
  return report.solution.achievable ? 0 : 3;
}

int run_compare(const std::string& input, const std::string& input_x, const std::string& input_y,
                const std::string& kind_name, int resamples, SeedOption& seed_opt, double z,
                int threads, const std::string& format, const std::string& out_path) {
  const loam::LoamKind kind = kind_name == "repeatability" ? loam::LoamKind::repeatability
                                                           : loam::LoamKind::reproducibility;
  loam::Provenance prov;
  prov.tool_version = loam::kVersion;

  std::string method_x;
  std::string method_y;
  std::optional<loam::PairedStudy> study;
  if (!input.empty()) {
    const std::string bytes = read_file(input);
    prov.input_digest = loam::fnv1a64_hex(loam::fnv1a64(bytes));
    loam::WideCsv wide = loam::parse_wide_csv(bytes);
    method_x = wide.method_x;
    method_y = wide.method_y;
    study.emplace(loam::ingest_long(wide.records_x), loam::ingest_long(wide.records_y));
  } else {
    const std::string bytes_x = read_file(input_x);
    const std::string bytes_y = read_file(input_y);
    prov.input_digest = loam::fnv1a64_hex(loam::fnv1a64(bytes_y, loam::fnv1a64(bytes_x)));
    loam::LongCsv csv_x = loam::parse_long_csv(bytes_x);
    loam::LongCsv csv_y = loam::parse_long_csv(bytes_y);
    method_x = csv_x.method.empty() ? "X" : csv_x.method;
    method_y = csv_y.method.empty() ? "Y" : csv_y.method;
    study.emplace(loam::ingest_long(csv_x.records), loam::ingest_long(csv_y.records));
  }

  prov.has_seed = true;
  prov.seed = seed_opt.resolve();
  const loam::ComparisonResult result =
      loam::bootstrap_compare(*study, kind, resamples, prov.seed, z, threads);
  write_output(format == "json"
                   ? loam::render_comparison_json(result, prov, method_x, method_y, z)
                   : loam::render_comparison_text(result, prov, method_x, method_y, z),
               out_path);
  return 0;
}

int run_simulate(const loam::ModelParams& params, int a, int b, int c, SeedOption& seed_opt,
                 double z, const std::string& out_path) {
  const loam::Design design{a, b, c};
  const std::uint64_t seed = seed_opt.resolve();
  const loam::MeasurementGrid grid = loam::simulate(params, design, seed);
  write_output(loam::write_long_csv(grid), out_path);

  const loam::TrueLoam truth = loam::true_loam(params, design, z);
  const std::string sidecar_json = loam::render_truth_sidecar_json(params, design, truth, seed, z);
  if (out_path.empty()) {
    std::cout << sidecar_json;
    return 0;
  }
  std::filesystem::path sidecar(out_path);
  sidecar.replace_extension(".truth.json");
  write_output(sidecar_json, sidecar.string());
  std::cerr << "wrote " << out_path << " and " << sidecar.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproducibility and repeatability limits of agreement with the mean "
               "for balanced subject x observer x replicate studies"};
  app.set_version_flag("--version", std::string(loam::kVersion));
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand("estimate", "Analyze one long-format CSV dataset");
  std::string est_input;
  double est_level = 0.95;
  double est_z = 1.96;
  bool est_diffs = false;
  std::string est_format = "json";
  std::string est_out;
  est->add_option("input", est_input, "Long-format CSV (subject,observer,replicate,value)")
      ->required();
  est->add_option("--level", est_level, "Confidence level for all intervals");
  est->add_option("--z", est_z, "Agreement-limit multiplier");
  est->add_flag("--emit-differences", est_diffs, "Include per-datum difference series");
  est->add_option("--format", est_format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  est->add_option("--out", est_out, "Write output to this file instead of stdout");

  // samplesize
  auto* plan = app.add_subcommand("samplesize",
                                  "Solve for the study size reaching a target CI width");
  loam::PilotEstimates pilot;
  std::string plan_solve_for = "observers";
  int plan_a = 0;
  int plan_b = 0;
  int plan_c = 0;
  double plan_target = 0.0;
  int plan_b_max = 10000;
  int plan_a_max = 10000;
  double plan_level = 0.95;
  double plan_z = 1.96;
  std::string plan_format = "json";
  std::string plan_out;
  plan->add_option("--sigma2-b0", pilot.sigma2_b0, "Pilot observer variance")->required();
  plan->add_option("--sigma2-ab0", pilot.sigma2_ab0, "Pilot interaction variance")->required();
  plan->add_option("--sigma2-e0", pilot.sigma2_e0, "Pilot residual variance")->required();
  plan->add_option("--solve-for", plan_solve_for, "Count to solve for")
      ->check(CLI::IsMember({"observers", "subjects"}));
  plan->add_option("--a", plan_a, "Fixed subject count (observers mode)");
  plan->add_option("--b", plan_b, "Fixed observer count (subjects mode)");
  plan->add_option("--c", plan_c, "Fixed replicate count")->required();
  plan->add_option("--target-width", plan_target, "Target CI width for the upper limit")
      ->required();
  plan->add_option("--b-max", plan_b_max, "Largest observer count to consider");
  plan->add_option("--a-max", plan_a_max, "Largest subject count to consider");
  plan->add_option("--level", plan_level, "Confidence level");
  plan->add_option("--z", plan_z, "Agreement-limit multiplier");
  plan->add_option("--format", plan_format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  plan->add_option("--out", plan_out, "Write output to this file instead of stdout");

  // compare
  auto* cmp = app.add_subcommand("compare", "Bootstrap comparison of two methods' limits");
  std::string cmp_input;
  std::string cmp_input_x;
  std::string cmp_input_y;
  std::string cmp_kind = "reproducibility";
  int cmp_resamples = 2000;
  SeedOption cmp_seed;
  double cmp_z = 1.96;
  int cmp_threads = 0;
  std::string cmp_format = "json";
  std::string cmp_out;
  cmp->add_option("input", cmp_input,
                  "Wide-format CSV (subject,observer,replicate,<method1>,<method2>)");
  cmp->add_option("--input-x", cmp_input_x, "Long-format CSV for the first method");
  cmp->add_option("--input-y", cmp_input_y, "Long-format CSV for the second method");
  cmp->add_option("--kind", cmp_kind, "Which limit to compare")
      ->check(CLI::IsMember({"reproducibility", "repeatability"}));
  cmp->add_option("--resamples", cmp_resamples, "Bootstrap resamples");
  auto* cmp_seed_opt = cmp->add_option("--seed", cmp_seed.value, "RNG seed");
  cmp->add_option("--z", cmp_z, "Agreement-limit multiplier");
  cmp->add_option("--threads", cmp_threads,
                  "Worker threads (default: LOAM_THREADS or all cores)");
  cmp->add_option("--format", cmp_format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  cmp->add_option("--out", cmp_out, "Write output to this file instead of stdout");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Draw a dataset from the two-way model");
  loam::ModelParams params;
  int sim_a = 0;
  int sim_b = 0;
  int sim_c = 0;
  SeedOption sim_seed;
  double sim_z = 1.96;
  std::string sim_out;
  sim->add_option("--mu", params.mu, "Grand mean");
  sim->add_option("--sigma-a", params.sigma_a, "Subject effect standard deviation");
  sim->add_option("--sigma-b", params.sigma_b, "Observer effect standard deviation");
  sim->add_option("--sigma-ab", params.sigma_ab, "Interaction standard deviation");
  sim->add_option("--sigma-e", params.sigma_e, "Residual standard deviation")->required();
  sim->add_option("--a", sim_a, "Subjects")->required();
  sim->add_option("--b", sim_b, "Observers")->required();
  sim->add_option("--c", sim_c, "Replicates per cell")->required();
  auto* sim_seed_opt = sim->add_option("--seed", sim_seed.value, "RNG seed");
  sim->add_option("--z", sim_z, "Multiplier recorded in the truth sidecar");
  sim->add_option("--out", sim_out,
                  "CSV output path; the truth sidecar lands next to it as <stem>.truth.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cmp_seed.given = cmp_seed_opt->count() > 0;
  sim_seed.given = sim_seed_opt->count() > 0;

  try {
    if (est->parsed()) {
      return run_estimate(est_input, est_level, est_z, est_diffs, est_format, est_out);
    }
    if (plan->parsed()) {
      return run_samplesize(pilot, plan_solve_for, plan_a, plan_b, plan_c, plan_target,
                            plan_b_max, plan_a_max, plan_level, plan_z, plan_format, plan_out);
    }
    if (cmp->parsed()) {
      const bool wide = !cmp_input.empty();
      const bool any_long = !cmp_input_x.empty() || !cmp_input_y.empty();
      const bool both_long = !cmp_input_x.empty() && !cmp_input_y.empty();
      if (wide ? any_long : !both_long) {
        throw InputError("pass either a wide-format file or both --input-x and --input-y");
      }
      return run_compare(cmp_input, cmp_input_x, cmp_input_y, cmp_kind, cmp_resamples, cmp_seed,
                         cmp_z, cmp_threads, cmp_format, cmp_out);
    }
    if (sim->parsed()) {
      return run_simulate(params, sim_a, sim_b, sim_c, sim_seed, sim_z, sim_out);
    }
  } catch (const loam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
