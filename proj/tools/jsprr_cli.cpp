// jsprr: instance generation, solving, baselines, diagnostics and sweeps.
//
// Exit codes: 0 success, 1 I/O or internal failure, 2 invalid input,
// 3 solver failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jsprr/adaptation.hpp"
#include "jsprr/analysis.hpp"
#include "jsprr/baselines.hpp"
#include "jsprr/experiment.hpp"
#include "jsprr/generator.hpp"
#include "jsprr/json_io.hpp"
#include "jsprr/relaxation.hpp"
#include "jsprr/rounding.hpp"

namespace {

using nlohmann::json;
using namespace jsprr;

enum ExitCode { kOk = 0, kFailure = 1, kInvalid = 2, kSolver = 3 };

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  double scale = 1.0;
  bool format_given = false;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + g.out);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out + '\n';
}

ResourceVector mean_utilization(const Instance& inst, const LoadReport& report) {
  ResourceVector u{};
  for (std::size_t n = 0; n < inst.num_stations(); ++n)
    for (std::size_t r = 0; r < kNumResources; ++r) {
      const double cap = inst.stations[n].capacity(static_cast<Resource>(r));
      if (cap > 0.0) u[r] += report.loads[n][r] / cap;
    }
  if (inst.num_stations() > 0)
    for (double& v : u) v /= static_cast<double>(inst.num_stations());
  return u;
}

constexpr const char* kSolutionCsvHeader = "algo,seed,cloud_load,util_storage,util_compute,util_up,util_down";

std::string solution_csv(const char* algo, std::uint64_t seed, const Instance& inst, const LoadReport& report) {
  const auto u = mean_utilization(inst, report);
  return std::string(kSolutionCsvHeader) + '\n' +
         csv_line({algo, std::to_string(seed), std::to_string(report.cloud_load), format_number(u[0]),
                   format_number(u[1]), format_number(u[2]), format_number(u[3])});
}

json trial_json(const RoundingTrial& t, bool raw) {
  json doc = {{"seed", t.seed}, {"solution", to_json(t.repaired)}, {"report", to_json(t.repaired_report)}};
  if (raw) {
    doc["raw_solution"] = to_json(t.raw);
    doc["raw_report"] = to_json(t.raw_report);
    doc["residual_mass"] = t.residual_mass;
  }
  return doc;
}

double parse_budget(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 0.0)) throw std::invalid_argument("budget must be a nonnegative number or inf");
  return v;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string config;
  std::optional<int> stations, users, services;
  std::optional<double> area, radius, zipf, storage_cap, compute_cap, uplink_cap, downlink_cap;
};

GeneratorConfig generator_config(const GenerateArgs& a, const Globals& g, const CLI::App& sub) {
  GeneratorConfig c;
  if (!a.config.empty()) c = generator_config_from_json(read_json(a.config));
  if (a.stations) c.n_stations = *a.stations;
  if (a.users) c.n_users = *a.users;
  if (a.services) c.n_services = *a.services;
  if (a.area) c.area_side = *a.area;
  if (a.radius) c.coverage_radius = *a.radius;
  if (a.zipf) c.zipf_shape = *a.zipf;
  if (a.storage_cap) c.storage_cap = *a.storage_cap;
  if (a.compute_cap) c.compute_cap = *a.compute_cap;
  if (a.uplink_cap) c.uplink_cap = *a.uplink_cap;
  if (a.downlink_cap) c.downlink_cap = *a.downlink_cap;
  if (sub.get_parent()->count("--seed") > 0 || a.config.empty()) c.seed = g.seed;
  c.n_users = std::max(1, static_cast<int>(std::lround(c.n_users * g.scale)));
  return c;
}

void add_generator_flags(CLI::App* sub, GenerateArgs& a) {
  sub->add_option("--config", a.config, "Generator config JSON (GeneratorConfig field names)");
  sub->add_option("--stations", a.stations, "Number of base stations (perfect square)");
  sub->add_option("--users", a.users, "Number of users before --scale");
  sub->add_option("--services", a.services, "Number of services");
  sub->add_option("--area", a.area, "Side of the square area (m)");
  sub->add_option("--radius", a.radius, "Coverage radius (m)");
  sub->add_option("--zipf", a.zipf, "Zipf shape of service popularity");
  sub->add_option("--storage-cap", a.storage_cap, "Storage capacity per station (GB)");
  sub->add_option("--compute-cap", a.compute_cap, "Compute capacity per station (GHz)");
  sub->add_option("--uplink-cap", a.uplink_cap, "Uplink capacity per station (Mbps)");
  sub->add_option("--downlink-cap", a.downlink_cap, "Downlink capacity per station (Mbps)");
}

int run_generate(const GenerateArgs& a, const Globals& g, const CLI::App& sub) {
  const auto inst = generate_instance(generator_config(a, g, sub));
  emit(g, dump(to_json(inst)));
  return kOk;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  int trials = 50;
  std::string pick = "best";
  bool emit_raw = false;
  std::string dump_lp;
  int workers = 1;
};

int run_solve(const SolveArgs& a, const Globals& g) {
  const auto inst = load_instance(a.instance);
  require_valid(inst);
  if (!a.dump_lp.empty()) write_lp(build_lp(inst, inst.has_adaptation() && std::isfinite(*inst.adaptation_budget)),
                                    std::filesystem::path(a.dump_lp));
  SolveOptions opt;
  opt.trials = a.trials;
  opt.seed = g.seed;
  opt.pick = a.pick == "median" ? Pick::Median : Pick::Best;
  opt.workers = a.workers;
  const auto result = solve_randomized_rounding(inst, opt);
  const auto& chosen = result.best();
  if (g.format == "csv") {
    emit(g, solution_csv("rr", g.seed, inst, chosen.repaired_report));
    return kOk;
  }
  const auto stats = lp_stats(result.frac);
  json trials = json::array();
  for (const auto& t : result.trials)
    trials.push_back({{"seed", t.seed},
                      {"raw_cloud_load", t.raw_report.cloud_load},
                      {"raw_feasible", t.raw_report.feasible},
                      {"cloud_load", t.repaired_report.cloud_load}});
  json doc = {{"algo", "rr"},
              {"seed", g.seed},
              {"pick", a.pick},
              {"cloud_load", chosen.repaired_report.cloud_load},
              {"lp", {{"objective", stats.objective},
                      {"lambda", stats.lambda},
                      {"mu", stats.mu},
                      {"nu", stats.nu},
                      {"iterations", result.frac.iterations}}},
              {"factors", to_json(result.factors)},
              {"chosen_trial", result.chosen},
              {"trials", std::move(trials)},
              {"result", trial_json(chosen, a.emit_raw)}};
  emit(g, dump(doc));
  return kOk;
}

// ---------------------------------------------------------------------------

struct BaselineArgs {
  std::string instance;
  std::string algo = "greedy";
};

int run_baseline(const BaselineArgs& a, const Globals& g) {
  const auto inst = load_instance(a.instance);
  require_valid(inst);
  json doc = {{"algo", a.algo}, {"seed", g.seed}};
  if (a.algo == "greedy") {
    const auto result = greedy_cache(inst);
    const auto raw = evaluate_solution(inst, result.raw);
    const auto repaired = evaluate_solution(inst, result.repaired);
    if (g.format == "csv") {
      emit(g, solution_csv("greedy", g.seed, inst, repaired));
      return kOk;
    }
    doc["cloud_load"] = repaired.cloud_load;
    doc["result"] = {{"solution", to_json(result.repaired)},
                     {"report", to_json(repaired)},
                     {"raw_solution", to_json(result.raw)},
                     {"raw_report", to_json(raw)}};
  } else if (a.algo == "nonoverlap") {
    const int load = nonoverlapping_optimal(inst);
    if (g.format == "csv") {
      emit(g, std::string("algo,seed,cloud_load\n") + csv_line({"nonoverlap", std::to_string(g.seed),
                                                                 std::to_string(load)}));
      return kOk;
    }
    doc["cloud_load"] = load;
  } else {
    const auto result = optimal_bruteforce(inst);
    const auto report = evaluate_solution(inst, result.solution);
    if (g.format == "csv") {
      emit(g, solution_csv("oracle", g.seed, inst, report));
      return kOk;
    }
    doc["cloud_load"] = result.cloud_load;
    doc["result"] = {{"solution", to_json(result.solution)}, {"report", to_json(report)}};
  }
  emit(g, dump(doc));
  return kOk;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string instance;
  bool counterexample = false;
  std::string bottleneck = "compute";
  double capacity = 1.0;
  bool check = false;
};

Resource parse_resource(const std::string& text) {
  for (auto r : {Resource::Storage, Resource::Compute, Resource::Uplink, Resource::Downlink})
    if (text == to_string(r)) return r;
  throw std::invalid_argument("unknown resource \"" + text + "\"");
}

json report_json(const SubmodularityReport& r) {
  return {{"phi", r.phi}, {"delta", r.delta}, {"ratio", r.ratio}, {"phi_convention", r.phi_convention}};
}

int run_analyze(const AnalyzeArgs& a, const Globals& g) {
  if (a.counterexample) {
    const auto r = verify_counterexample(parse_resource(a.bottleneck), a.capacity);
    emit(g, dump({{"bottleneck", to_string(r.bottleneck)},
                  {"capacity", r.capacity},
                  {"f_A", r.f_a},
                  {"f_B", r.f_b},
                  {"f_A_plus_e12", r.f_a_e12},
                  {"f_B_plus_e12", r.f_b_e12},
                  {"marginal_A", r.marginal_a()},
                  {"marginal_B", r.marginal_b()},
                  {"submodularity_violated", r.submodularity_violated()}}));
    return kOk;
  }
  if (a.instance.empty()) throw std::invalid_argument("analyze needs an instance or --counterexample");
  const auto inst = load_instance(a.instance);
  require_valid(inst);
  json doc = report_json(delta_bound(inst));
  if (a.check) {
    const auto c = greedy_guarantee_check(inst);
    doc["greedy_served"] = c.greedy_served;
    doc["optimum_served"] = c.optimum_served;
    doc["guarantee_holds"] = c.holds;
  }
  emit(g, dump(doc));
  return kOk;
}

// ---------------------------------------------------------------------------

struct PeriodsArgs {
  std::string instance;
  int periods = 2;
  double churn = 0.1;
  std::string budget = "inf";
  bool bootstrap_free = false;
  int trials = 50;
  int workers = 1;
};

int run_periods_cmd(const PeriodsArgs& a, const Globals& g) {
  const auto inst = load_instance(a.instance);
  require_valid(inst);
  const double budget = parse_budget(a.budget);
  const double zipf = GeneratorConfig{}.zipf_shape;
  const auto demands = churn_sequence(inst, a.periods, a.churn, zipf, g.seed);
  PeriodOptions opt;
  opt.trials = a.trials;
  opt.workers = a.workers;
  opt.bootstrap_free = a.bootstrap_free;
  const auto results = run_periods(inst, demands, budget, g.seed, opt);
  if (g.format == "csv") {
    std::string text = "period,cloud_load,adaptation_spend,raw_adaptation_spend,lp_objective\n";
    for (const auto& r : results)
      text += csv_line({std::to_string(r.period), std::to_string(r.cloud_load),
                        r.adaptation_spend ? format_number(*r.adaptation_spend) : "",
                        format_number(r.raw_adaptation_spend), format_number(r.lp_objective)});
    emit(g, text);
    return kOk;
  }
  json records = json::array();
  for (const auto& r : results) {
    json rec = {{"period", r.period},
                {"cloud_load", r.cloud_load},
                {"lp_objective", r.lp_objective},
                {"budget_applied", r.budget_applied},
                {"raw_adaptation_spend", r.raw_adaptation_spend},
                {"solution", to_json(r.solution)},
                {"report", to_json(r.report)}};
    rec["adaptation_spend"] = r.adaptation_spend ? json(*r.adaptation_spend) : json(nullptr);
    records.push_back(std::move(rec));
  }
  emit(g, dump({{"budget", a.budget}, {"churn", a.churn}, {"periods", std::move(records)}}));
  return kOk;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  GenerateArgs gen;
  std::string sweep = "storage";
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  int num_seeds = 0;
  std::vector<std::string> algos{"rr", "greedy", "lr"};
  int trials = 50;
  bool timing = false;
  int workers = 1;
};

int run_experiment_cmd(const ExperimentArgs& a, const Globals& g, const CLI::App& sub) {
  ExperimentConfig cfg;
  cfg.kind = parse_sweep_kind(a.sweep);
  Globals unscaled = g;
  unscaled.scale = 1.0;
  cfg.base = generator_config(a.gen, unscaled, sub);
  cfg.scale = g.scale;
  cfg.values = a.values.empty() ? default_sweep_values(cfg.kind, cfg.base) : a.values;
  if (!a.seeds.empty()) {
    cfg.seeds = a.seeds;
  } else {
    const int count = a.num_seeds > 0 ? a.num_seeds : 1;
    for (int i = 0; i < count; ++i) cfg.seeds.push_back(g.seed + static_cast<std::uint64_t>(i));
  }
  cfg.algos.clear();
  for (const auto& name : a.algos) cfg.algos.push_back(parse_algo(name));
  cfg.trials = a.trials;
  cfg.timing = a.timing;
  cfg.workers = a.workers;
  const auto table = run_experiment(cfg);
  emit(g, g.format == "json" ? dump(to_json(table)) : to_csv(table));
  return kOk;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
  std::vector<std::string> inputs;
};

int run_report(const ReportArgs& a, const Globals& g) {
  ResultTable merged;
  for (const auto& path : a.inputs) {
    const auto t = table_from_json(read_json(path));
    merged.rows.insert(merged.rows.end(), t.rows.begin(), t.rows.end());
  }
  const auto summary = summarize(merged);
  if (g.format == "json") {
    json rows = json::array();
    for (const auto& s : summary)
      rows.push_back({{"kind", to_string(s.kind)},
                      {"sweep", s.sweep},
                      {"algo", to_string(s.algo)},
                      {"samples", s.samples},
                      {"errors", s.errors},
                      {"mean_cloud_load", s.mean_cloud_load},
                      {"sd_cloud_load", s.stddev_cloud_load},
                      {"util_storage", s.mean_utilization[0]},
                      {"util_compute", s.mean_utilization[1]},
                      {"util_up", s.mean_utilization[2]},
                      {"util_down", s.mean_utilization[3]}});
    emit(g, dump({{"summary", std::move(rows)}}));
    return kOk;
  }
  std::ostringstream os;
  write_summary_csv(summary, os);
  emit(g, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint service placement and request routing: solver and experiment harness"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--out", g.out, "Output path (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--scale", g.scale, "Multiply the user count of generated instances")
      ->check(CLI::PositiveNumber);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic instance as JSON");
  add_generator_flags(generate, gen);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "LP relaxation plus randomized rounding and repair");
  solve_cmd->add_option("instance", solve.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--trials", solve.trials, "Rounding trials")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--pick", solve.pick, "Trial selection")->check(CLI::IsMember({"best", "median"}));
  solve_cmd->add_flag("--emit-raw", solve.emit_raw, "Include the pre-repair solution and report");
  solve_cmd->add_option("--dump-lp", solve.dump_lp, "Write the relaxation in LP format");
  solve_cmd->add_option("--workers", solve.workers, "Parallel trial workers (0: all cores)");

  BaselineArgs base;
  auto* baseline = app.add_subcommand("baseline", "Greedy, disjoint-coverage optimum or exhaustive oracle");
  baseline->add_option("instance", base.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  baseline->add_option("--algo", base.algo, "Baseline")->check(CLI::IsMember({"greedy", "nonoverlap", "oracle"}));

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Approximate-submodularity report");
  analyze->add_option("instance", an.instance, "Unit-requirement instance JSON")->check(CLI::ExistingFile);
  analyze->add_flag("--counterexample", an.counterexample, "Evaluate the two-station counterexample");
  analyze->add_option("--bottleneck", an.bottleneck, "Counterexample bottleneck resource")
      ->check(CLI::IsMember({"compute", "uplink", "downlink"}));
  analyze->add_option("--capacity", an.capacity, "Counterexample bottleneck capacity");
  analyze->add_flag("--check", an.check, "Compare greedy against the exhaustive optimum");

  PeriodsArgs per;
  auto* periods = app.add_subcommand("periods", "Multi-period solve under an adaptation budget");
  periods->add_option("instance", per.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  periods->add_option("--periods", per.periods, "Number of periods")->check(CLI::PositiveNumber);
  periods->add_option("--churn", per.churn, "Fraction of users re-drawing their service each period")
      ->check(CLI::Range(0.0, 1.0));
  periods->add_option("--budget", per.budget, "Adaptation budget D in GB, or inf");
  periods->add_flag("--bootstrap-free", per.bootstrap_free, "Do not charge the first period against D");
  periods->add_option("--trials", per.trials, "Rounding trials per period")->check(CLI::PositiveNumber);
  periods->add_option("--workers", per.workers, "Parallel trial workers");

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Capacity sweep over generated instances");
  add_generator_flags(experiment, ex.gen);
  experiment->add_option("--sweep", ex.sweep, "Swept quantity")
      ->check(CLI::IsMember({"storage", "compute", "bandwidth", "utilization"}));
  experiment->add_option("--values", ex.values, "Sweep values")->delimiter(',');
  experiment->add_option("--seeds", ex.seeds, "Instance seeds")->delimiter(',');
  experiment->add_option("--num-seeds", ex.num_seeds, "Use seeds seed, seed+1, ...")->check(CLI::PositiveNumber);
  experiment->add_option("--algos", ex.algos, "Algorithms")->delimiter(',')->check(CLI::IsMember({"rr", "greedy", "lr"}));
  experiment->add_option("--trials", ex.trials, "Rounding trials")->check(CLI::PositiveNumber);
  experiment->add_flag("--timing", ex.timing, "Record wall-clock runtimes");
  experiment->add_option("--workers", ex.workers, "Parallel sweep cells (0: all cores)");

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Per-(sweep value, algorithm) means of experiment JSON");
  report->add_option("inputs", rep.inputs, "Result table JSON files")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  g.format_given = app.count("--format") > 0;
  if (!g.format_given && (experiment->parsed() || report->parsed())) g.format = "csv";

  try {
    if (generate->parsed()) return run_generate(gen, g, *generate);
    if (solve_cmd->parsed()) return run_solve(solve, g);
    if (baseline->parsed()) return run_baseline(base, g);
    if (analyze->parsed()) return run_analyze(an, g);
    if (periods->parsed()) return run_periods_cmd(per, g);
    if (experiment->parsed()) return run_experiment_cmd(ex, g, *experiment);
    if (report->parsed()) return run_report(rep, g);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
