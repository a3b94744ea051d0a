#pragma once

// Parameter sweeps over generated instances and their tabular export.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jsprr/generator.hpp"
#include "jsprr/model.hpp"

namespace jsprr {

enum class SweepKind { Storage, Compute, Bandwidth, Utilization };
enum class Algo { RR, Greedy, LR };

const char* to_string(SweepKind kind);
const char* to_string(Algo algo);
SweepKind parse_sweep_kind(const std::string& text);
Algo parse_algo(const std::string& text);

/// Sweep values used when none are given. Bandwidth values multiply the base
/// uplink and downlink capacities together; utilization values are station ids.
std::vector<double> default_sweep_values(SweepKind kind, const GeneratorConfig& base);

struct ExperimentConfig {
  SweepKind kind = SweepKind::Storage;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  std::vector<Algo> algos{Algo::RR, Algo::Greedy, Algo::LR};
  GeneratorConfig base;
  int trials = 50;
  double scale = 1.0;   // multiplies base.n_users
  bool timing = false;  // runtime_ms stays 0 unless set
  int workers = 1;
};

/// Throws std::invalid_argument for empty values/seeds/algos or bad scale.
void validate_config(const ExperimentConfig& config);

/// Generator config for one sweep point (scale applied).
GeneratorConfig sweep_point(const ExperimentConfig& config, double value, std::uint64_t seed);

struct ResultRow {
  SweepKind kind = SweepKind::Storage;
  double sweep = 0.0;
  Algo algo = Algo::RR;
  std::uint64_t seed = 0;
  double cloud_load = 0.0;  // fractional for LR
  ResourceVector utilization{};
  double runtime_ms = 0.0;
  std::map<std::string, double> factors;  // RR only; +inf allowed
  std::optional<std::string> error;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

/// Rows ordered by (sweep value, algorithm, seed position). A failing cell
/// yields error rows and the run continues.
ResultTable run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "sweep,algo,seed,cloud_load,util_storage,util_compute,util_up,util_down,runtime_ms";

void write_csv(const ResultTable& table, std::ostream& out);
std::string to_csv(const ResultTable& table);

nlohmann::json to_json(const ResultTable& table);
ResultTable table_from_json(const nlohmann::json& doc);

struct Summary {
  SweepKind kind = SweepKind::Storage;
  double sweep = 0.0;
  Algo algo = Algo::RR;
  int samples = 0;
  int errors = 0;
  double mean_cloud_load = 0.0;
  double stddev_cloud_load = 0.0;
  ResourceVector mean_utilization{};
};

/// Per-(sweep value, algorithm) means over seeds, error rows excluded.
std::vector<Summary> summarize(const ResultTable& table);
void write_summary_csv(const std::vector<Summary>& summary, std::ostream& out);

/// Shortest round-trip decimal text.
std::string format_number(double v);

}  // namespace jsprr
