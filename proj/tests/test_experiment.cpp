#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "jsprr/experiment.hpp"
#include "jsprr/relaxation.hpp"

using namespace jsprr;

namespace {

ExperimentConfig small(SweepKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.values = default_sweep_values(kind, c.base);
  c.seeds = {1, 2};
  c.trials = 4;
  c.scale = 0.1;
  return c;
}

}  // namespace

TEST(Experiment, StorageSweepShape) {
  const auto table = run_experiment(small(SweepKind::Storage));
  EXPECT_EQ(table.rows.size(), 5u * 2u * 3u);
  std::set<double> values;
  for (const auto& r : table.rows) {
    values.insert(r.sweep);
    EXPECT_FALSE(r.error.has_value());
  }
  EXPECT_EQ(values, (std::set<double>{250, 500, 750, 1000, 1250}));
  // (value, algo, seed) order
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto& a = table.rows[i - 1];
    const auto& b = table.rows[i];
    EXPECT_TRUE(a.sweep < b.sweep || (a.sweep == b.sweep && (a.algo < b.algo || (a.algo == b.algo && a.seed < b.seed))));
  }
}

TEST(Experiment, SingleLrRowIsRelaxationValue) {
  ExperimentConfig c;
  c.values = {500};
  c.seeds = {3};
  c.algos = {Algo::LR};
  c.scale = 0.1;
  const auto table = run_experiment(c);
  ASSERT_EQ(table.rows.size(), 1u);
  const auto inst = generate_instance(sweep_point(c, 500, 3));
  EXPECT_EQ(table.rows[0].cloud_load, solve_relaxation(inst).objective);
}

TEST(Experiment, DeterministicAcrossWorkers) {
  auto c = small(SweepKind::Bandwidth);
  const auto a = run_experiment(c);
  c.workers = 3;
  const auto b = run_experiment(c);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(to_csv(a), to_csv(b));
}

TEST(Experiment, UtilizationRowsPerStation) {
  auto c = small(SweepKind::Utilization);
  c.seeds = {1};
  const auto table = run_experiment(c);
  EXPECT_EQ(table.rows.size(), 9u * 3u);
  for (const auto& r : table.rows)
    for (double u : r.utilization) {
      EXPECT_GE(u, 0.0);
      EXPECT_LE(u, 1.0 + 1e-9);
    }
}

TEST(Experiment, FailingCellsBecomeErrorRows) {
  auto c = small(SweepKind::Storage);
  c.values = {250};
  c.base.n_stations = 8;  // not a square grid
  const auto table = run_experiment(c);
  ASSERT_EQ(table.rows.size(), 6u);
  for (const auto& r : table.rows) EXPECT_TRUE(r.error.has_value());
  EXPECT_NE(to_csv(table).find("error"), std::string::npos);
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig c;
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
  c.values = {1};
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
  c.seeds = {1};
  c.kind = SweepKind::Utilization;
  c.values = {9};
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
  EXPECT_THROW(parse_algo("lp"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_kind("latency"), std::invalid_argument);
}

TEST(Export, EmptyTableHeaderOnly) {
  EXPECT_EQ(to_csv({}), std::string(kCsvHeader) + "\n");
  EXPECT_EQ(std::string(kCsvHeader), "sweep,algo,seed,cloud_load,util_storage,util_compute,util_up,util_down,runtime_ms");
}

TEST(Export, JsonRoundTrip) {
  auto table = run_experiment(small(SweepKind::Compute));
  table.rows[0].factors["compute"] = std::numeric_limits<double>::infinity();
  table.rows[1].error = "boom";
  const auto back = table_from_json(nlohmann::json::parse(to_json(table).dump()));
  EXPECT_TRUE(back == table);
}

TEST(Export, NumberFormatting) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(250.0), "250");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Summary, MeansPerValueAndAlgo) {
  ResultTable t;
  t.rows.push_back({SweepKind::Storage, 1, Algo::RR, 1, 4, {1, 0, 0, 0}, 0, {}, std::nullopt});
  t.rows.push_back({SweepKind::Storage, 1, Algo::RR, 2, 6, {0, 0, 0, 0}, 0, {}, std::nullopt});
  t.rows.push_back({SweepKind::Storage, 1, Algo::RR, 3, 0, {0, 0, 0, 0}, 0, {}, std::string("x")});
  const auto s = summarize(t);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].samples, 2);
  EXPECT_EQ(s[0].errors, 1);
  EXPECT_DOUBLE_EQ(s[0].mean_cloud_load, 5.0);
  EXPECT_DOUBLE_EQ(s[0].mean_utilization[0], 0.5);
  std::ostringstream os;
  write_summary_csv(s, os);
  EXPECT_NE(os.str().find("storage,1,rr,2,1,5,"), std::string::npos);
}

TEST(Experiment, ComputeThreeGhzCloseToRelaxation) {
  ExperimentConfig c;
  c.kind = SweepKind::Compute;
  c.values = {3};
  c.seeds = {1, 2};
  c.algos = {Algo::RR, Algo::LR};
  c.trials = 20;
  const auto table = run_experiment(c);
  double rr = 0, lr = 0;
  for (const auto& r : table.rows) (r.algo == Algo::RR ? rr : lr) += r.cloud_load;
  EXPECT_LE(rr, 1.15 * lr);
}
