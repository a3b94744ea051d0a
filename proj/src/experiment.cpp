#include "jsprr/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "jsprr/baselines.hpp"
#include "jsprr/parallel.hpp"
#include "jsprr/relaxation.hpp"
#include "jsprr/rounding.hpp"

namespace jsprr {

using nlohmann::json;

const char* to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::Storage: return "storage";
    case SweepKind::Compute: return "compute";
    case SweepKind::Bandwidth: return "bandwidth";
    case SweepKind::Utilization: return "utilization";
  }
  return "?";
}

const char* to_string(Algo algo) {
  switch (algo) {
    case Algo::RR: return "rr";
    case Algo::Greedy: return "greedy";
    case Algo::LR: return "lr";
  }
  return "?";
}

SweepKind parse_sweep_kind(const std::string& text) {
  for (auto k : {SweepKind::Storage, SweepKind::Compute, SweepKind::Bandwidth, SweepKind::Utilization})
    if (text == to_string(k)) return k;
  throw std::invalid_argument("unknown sweep kind \"" + text + "\"");
}

Algo parse_algo(const std::string& text) {
  for (auto a : {Algo::RR, Algo::Greedy, Algo::LR})
    if (text == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm \"" + text + "\"");
}

std::vector<double> default_sweep_values(SweepKind kind, const GeneratorConfig& base) {
  switch (kind) {
    case SweepKind::Storage: return {250, 500, 750, 1000, 1250};
    case SweepKind::Compute: return {1, 3, 5, 10, 15, 20};
    case SweepKind::Bandwidth: return {0.5, 0.75, 1.0, 1.25, 1.5};
    case SweepKind::Utilization: {
      std::vector<double> ids;
      for (int n = 0; n < base.n_stations; ++n) ids.push_back(n);
      return ids;
    }
  }
  return {};
}

void validate_config(const ExperimentConfig& config) {
  if (config.values.empty()) throw std::invalid_argument("experiment needs at least one sweep value");
  if (config.seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
  if (config.algos.empty()) throw std::invalid_argument("experiment needs at least one algorithm");
  if (!(config.scale > 0.0) || !std::isfinite(config.scale)) throw std::invalid_argument("scale must be positive");
  if (config.trials <= 0) throw std::invalid_argument("trials must be positive");
  for (double v : config.values) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("sweep values must be nonnegative");
    if (config.kind == SweepKind::Utilization &&
        (v != std::floor(v) || v >= static_cast<double>(config.base.n_stations)))
      throw std::invalid_argument("utilization sweep values must be station ids");
  }
}

GeneratorConfig sweep_point(const ExperimentConfig& config, double value, std::uint64_t seed) {
  GeneratorConfig g = config.base;
  g.seed = seed;
  g.n_users = std::max(1, static_cast<int>(std::lround(config.base.n_users * config.scale)));
  switch (config.kind) {
    case SweepKind::Storage: g.storage_cap = value; break;
    case SweepKind::Compute: g.compute_cap = value; break;
    case SweepKind::Bandwidth:
      g.uplink_cap = config.base.uplink_cap * value;
      g.downlink_cap = config.base.downlink_cap * value;
      break;
    case SweepKind::Utilization: break;
  }
  return g;
}

namespace {

double ratio(double load, double cap) { return cap > 0.0 ? load / cap : 0.0; }

ResourceVector station_utilization(const Instance& inst, const std::vector<ResourceVector>& loads, std::size_t n) {
  ResourceVector u{};
  for (std::size_t r = 0; r < kNumResources; ++r)
    u[r] = ratio(loads[n][r], inst.stations[n].capacity(static_cast<Resource>(r)));
  return u;
}

ResourceVector mean_utilization(const Instance& inst, const std::vector<ResourceVector>& loads) {
  ResourceVector u{};
  for (std::size_t n = 0; n < inst.num_stations(); ++n) {
    const auto s = station_utilization(inst, loads, n);
    for (std::size_t r = 0; r < kNumResources; ++r) u[r] += s[r];
  }
  if (inst.num_stations() > 0)
    for (double& v : u) v /= static_cast<double>(inst.num_stations());
  return u;
}

std::map<std::string, double> flatten(const BicriteriaReport& f) {
  std::map<std::string, double> out{
      {"compute", f.compute}, {"uplink", f.uplink}, {"downlink", f.downlink}, {"objective", f.objective}};
  double storage = 0.0;
  for (double v : f.storage) storage = std::max(storage, v);
  out["storage_max"] = storage;
  if (f.adaptation) out["adaptation"] = *f.adaptation;
  return out;
}

struct Measured {
  double cloud_load = 0.0;
  std::vector<ResourceVector> loads;
  double runtime_ms = 0.0;
  std::map<std::string, double> factors;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// One instance, every algorithm. Values sharing an instance (utilization)
// are expanded by the caller.
std::vector<std::optional<Measured>> run_cell(const Instance& inst, const ExperimentConfig& config,
                                              std::uint64_t seed, std::vector<std::string>& errors) {
  std::vector<std::optional<Measured>> out(config.algos.size());
  errors.assign(config.algos.size(), "");
  std::optional<FractionalSolution> frac;
  for (std::size_t a = 0; a < config.algos.size(); ++a) {
    try {
      Measured m;
      const auto start = Clock::now();
      switch (config.algos[a]) {
        case Algo::RR: {
          SolveOptions opt;
          opt.trials = config.trials;
          opt.seed = seed;
          const auto result = solve_randomized_rounding(inst, opt);
          m.runtime_ms = elapsed_ms(start);
          const auto& chosen = result.best();
          m.cloud_load = chosen.repaired_report.cloud_load;
          m.loads = chosen.repaired_report.loads;
          m.factors = flatten(result.factors);
          if (!frac) frac = result.frac;
          break;
        }
        case Algo::Greedy: {
          const auto g = greedy_cache(inst);
          m.runtime_ms = elapsed_ms(start);
          const auto report = evaluate_solution(inst, g.repaired);
          m.cloud_load = report.cloud_load;
          m.loads = report.loads;
          break;
        }
        case Algo::LR: {
          if (!frac || config.timing) frac = solve_relaxation(inst);
          m.runtime_ms = elapsed_ms(start);
          m.cloud_load = frac->objective;
          m.loads = frac->loads;
          break;
        }
      }
      if (!config.timing) m.runtime_ms = 0.0;
      out[a] = std::move(m);
    } catch (const std::exception& e) {
      errors[a] = e.what();
    }
  }
  return out;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const bool shared = config.kind == SweepKind::Utilization;
  const std::size_t n_points = shared ? 1 : config.values.size();
  const std::size_t n_seeds = config.seeds.size();
  const std::size_t n_algos = config.algos.size();

  // rows[value][algo][seed]
  std::vector<ResultRow> grid(config.values.size() * n_algos * n_seeds);
  auto slot = [&](std::size_t v, std::size_t a, std::size_t s) -> ResultRow& {
    return grid[(v * n_algos + a) * n_seeds + s];
  };

  parallel_for(n_points * n_seeds, config.workers, [&](std::size_t cell) {
    const std::size_t point = cell / n_seeds;
    const std::size_t si = cell % n_seeds;
    const std::uint64_t seed = config.seeds[si];
    std::vector<std::optional<Measured>> measured(n_algos);
    std::vector<std::string> errors(n_algos);
    std::optional<Instance> inst;
    try {
      inst = generate_instance(sweep_point(config, shared ? 0.0 : config.values[point], seed));
      measured = run_cell(*inst, config, seed, errors);
    } catch (const std::exception& e) {
      errors.assign(n_algos, e.what());
    }
    const std::size_t v_lo = shared ? 0 : point;
    const std::size_t v_hi = shared ? config.values.size() : point + 1;
    for (std::size_t v = v_lo; v < v_hi; ++v) {
      for (std::size_t a = 0; a < n_algos; ++a) {
        ResultRow& row = slot(v, a, si);
        row.kind = config.kind;
        row.sweep = config.values[v];
        row.algo = config.algos[a];
        row.seed = seed;
        if (!measured[a]) {
          row.error = errors[a].empty() ? "unknown failure" : errors[a];
          continue;
        }
        const auto& m = *measured[a];
        row.cloud_load = m.cloud_load;
        row.runtime_ms = m.runtime_ms;
        row.factors = m.factors;
        row.utilization = shared ? station_utilization(*inst, m.loads, static_cast<std::size_t>(config.values[v]))
                                 : mean_utilization(*inst, m.loads);
      }
    }
  });

  // Order by (sweep value, algorithm, seed position).
  std::vector<std::size_t> value_order(config.values.size());
  for (std::size_t i = 0; i < value_order.size(); ++i) value_order[i] = i;
  std::stable_sort(value_order.begin(), value_order.end(),
                   [&](std::size_t a, std::size_t b) { return config.values[a] < config.values[b]; });
  std::vector<std::size_t> algo_order(n_algos);
  for (std::size_t i = 0; i < n_algos; ++i) algo_order[i] = i;
  std::stable_sort(algo_order.begin(), algo_order.end(),
                   [&](std::size_t a, std::size_t b) { return config.algos[a] < config.algos[b]; });

  ResultTable table;
  for (std::size_t v : value_order)
    for (std::size_t a : algo_order)
      for (std::size_t s = 0; s < n_seeds; ++s) table.rows.push_back(slot(v, a, s));
  return table;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const ResultTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : table.rows) {
    out << format_number(r.sweep) << ',' << to_string(r.algo) << ',' << r.seed << ',';
    if (r.error) {
      out << "error,,,,,\n";
      continue;
    }
    out << format_number(r.cloud_load);
    for (double u : r.utilization) out << ',' << format_number(u);
    out << ',' << format_number(r.runtime_ms) << '\n';
  }
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream os;
  write_csv(table, os);
  return os.str();
}

namespace {

json number_or_text(double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); }

double from_number_or_text(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number");
}

}  // namespace

json to_json(const ResultTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    json row = {{"kind", to_string(r.kind)},
                {"sweep", r.sweep},
                {"algo", to_string(r.algo)},
                {"seed", r.seed},
                {"cloud_load", r.cloud_load},
                {"util_storage", r.utilization[0]},
                {"util_compute", r.utilization[1]},
                {"util_up", r.utilization[2]},
                {"util_down", r.utilization[3]},
                {"runtime_ms", r.runtime_ms}};
    if (!r.factors.empty()) {
      json f = json::object();
      for (const auto& [k, v] : r.factors) f[k] = number_or_text(v);
      row["factors"] = std::move(f);
    }
    if (r.error) row["error"] = *r.error;
    rows.push_back(std::move(row));
  }
  return {{"columns", kCsvHeader}, {"rows", std::move(rows)}};
}

ResultTable table_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("rows") || !doc.at("rows").is_array())
    throw std::invalid_argument("result table JSON needs a \"rows\" array");
  ResultTable table;
  for (const auto& j : doc.at("rows")) {
    ResultRow r;
    r.kind = parse_sweep_kind(j.at("kind").get<std::string>());
    r.sweep = j.at("sweep").get<double>();
    r.algo = parse_algo(j.at("algo").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.cloud_load = j.at("cloud_load").get<double>();
    r.utilization = {j.at("util_storage").get<double>(), j.at("util_compute").get<double>(),
                     j.at("util_up").get<double>(), j.at("util_down").get<double>()};
    r.runtime_ms = j.at("runtime_ms").get<double>();
    if (j.contains("factors"))
      for (const auto& [k, v] : j.at("factors").items()) r.factors[k] = from_number_or_text(v);
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    table.rows.push_back(std::move(r));
  }
  return table;
}

std::vector<Summary> summarize(const ResultTable& table) {
  std::vector<Summary> out;
  std::vector<std::vector<double>> samples;
  for (const auto& r : table.rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Summary& s) {
      return s.kind == r.kind && s.sweep == r.sweep && s.algo == r.algo;
    });
    if (it == out.end()) {
      out.push_back({r.kind, r.sweep, r.algo});
      samples.emplace_back();
      it = out.end() - 1;
    }
    auto& s = *it;
    if (r.error) {
      ++s.errors;
      continue;
    }
    samples[it - out.begin()].push_back(r.cloud_load);
    ++s.samples;
    for (std::size_t k = 0; k < kNumResources; ++k) s.mean_utilization[k] += r.utilization[k];
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& s = out[i];
    if (s.samples == 0) continue;
    double sum = 0.0;
    for (double v : samples[i]) sum += v;
    s.mean_cloud_load = sum / s.samples;
    double sq = 0.0;
    for (double v : samples[i]) sq += (v - s.mean_cloud_load) * (v - s.mean_cloud_load);
    s.stddev_cloud_load = s.samples > 1 ? std::sqrt(sq / (s.samples - 1)) : 0.0;
    for (double& u : s.mean_utilization) u /= s.samples;
  }
  std::stable_sort(out.begin(), out.end(), [](const Summary& a, const Summary& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.sweep != b.sweep) return a.sweep < b.sweep;
    return a.algo < b.algo;
  });
  return out;
}

void write_summary_csv(const std::vector<Summary>& summary, std::ostream& out) {
  out << "kind,sweep,algo,samples,errors,mean_cloud_load,sd_cloud_load,util_storage,util_compute,util_up,util_down\n";
  for (const auto& s : summary) {
    out << to_string(s.kind) << ',' << format_number(s.sweep) << ',' << to_string(s.algo) << ',' << s.samples
        << ',' << s.errors << ',' << format_number(s.mean_cloud_load) << ',' << format_number(s.stddev_cloud_load);
    for (double u : s.mean_utilization) out << ',' << format_number(u);
    out << '\n';
  }
}

}  // namespace jsprr
