#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "jsprr/adaptation.hpp"
#include "jsprr/generator.hpp"
#include "jsprr/relaxation.hpp"

using namespace jsprr;

namespace {

Instance small_instance(std::uint64_t seed = 3) {
  GeneratorConfig c;
  c.n_users = 60;
  c.n_services = 15;
  c.storage_cap = 150;
  c.compute_cap = 3;
  c.seed = seed;
  return generate_instance(c);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST(DemandShift, ChurnExtremes) {
  const DemandSnapshot base(200, 4);
  const auto none = demand_shift(base, 0.0, 0.8, 10, 1);
  EXPECT_EQ(none.snapshot, base);
  EXPECT_EQ(none.redrawn, 0u);
  const auto all = demand_shift(base, 1.0, 0.8, 10, 1);
  EXPECT_EQ(all.redrawn, base.size());
  EXPECT_THROW(demand_shift(base, 1.5, 0.8, 10, 1), std::invalid_argument);
}

TEST(DemandShift, ChurnFraction) {
  const DemandSnapshot base(10000, 0);
  const auto r = demand_shift(base, 0.3, 0.8, 100, 42);
  const double frac = r.redrawn / 10000.0;
  EXPECT_GE(frac, 0.28);
  EXPECT_LE(frac, 0.32);
  EXPECT_EQ(demand_shift(base, 0.3, 0.8, 100, 42).snapshot, r.snapshot);
}

TEST(Periods, InfiniteBudgetEqualsIndependentSolves) {
  const auto inst = small_instance();
  const auto demands = churn_sequence(inst, 3, 0.3, 0.8, 5);
  PeriodOptions opt;
  opt.trials = 8;
  const auto results = run_periods(inst, demands, kInf, 11, opt);
  ASSERT_EQ(results.size(), 3u);
  for (std::size_t t = 0; t < 3; ++t) {
    SolveOptions s;
    s.trials = 8;
    s.seed = period_seed(11, t);
    const auto alone = solve_randomized_rounding(period_instance(inst, demands.snapshots[t], {}, std::nullopt), s);
    EXPECT_TRUE(results[t].solution == alone.best().repaired);
    EXPECT_EQ(results[t].cloud_load, alone.best().repaired_report.cloud_load);
    EXPECT_FALSE(results[t].budget_applied);
  }
}

TEST(Periods, ZeroBudgetFreezesPlacement) {
  const auto inst = small_instance();
  const auto demands = churn_sequence(inst, 3, 0.5, 0.8, 9);
  PeriodOptions opt;
  opt.trials = 8;
  opt.bootstrap_free = true;
  const auto results = run_periods(inst, demands, 0.0, 2, opt);
  ASSERT_EQ(results.size(), 3u);
  EXPECT_FALSE(results[0].budget_applied);
  int placed = 0;
  for (auto v : results[0].solution.placement.data()) placed += v;
  EXPECT_GT(placed, 0);
  for (std::size_t t = 1; t < results.size(); ++t) {
    EXPECT_TRUE(results[t].solution.placement == results[0].solution.placement) << t;
    EXPECT_EQ(*results[t].adaptation_spend, 0.0);
  }
}

TEST(Periods, ZeroBudgetFromEmptyPlacesNothing) {
  const auto inst = small_instance();
  PeriodOptions opt;
  opt.trials = 4;
  const auto results = run_periods(inst, churn_sequence(inst, 2, 0.2, 0.8, 1), 0.0, 2, opt);
  for (const auto& r : results) {
    for (auto v : r.solution.placement.data()) EXPECT_EQ(v, 0);
    EXPECT_EQ(r.cloud_load, static_cast<int>(inst.num_users()));
  }
}

TEST(Periods, SpendWithinBudget) {
  const auto inst = small_instance(8);
  // Popularity flip: every user moves to a different service.
  DemandSequence seq;
  seq.snapshots.push_back(snapshot_of(inst));
  DemandSnapshot flipped = seq.snapshots[0];
  for (auto& s : flipped) s = static_cast<int>(inst.num_services()) - 1 - s;
  seq.snapshots.push_back(flipped);
  for (double D : {0.0, 30.0, 120.0, 400.0}) {
    PeriodOptions opt;
    opt.trials = 6;
    const auto results = run_periods(inst, seq, D, 4, opt);
    Placement prev(inst.num_stations(), inst.num_services(), 0);
    for (const auto& r : results) {
      const auto check = evaluate_solution(period_instance(inst, seq.snapshots[r.period], prev, D), r.solution);
      EXPECT_TRUE(check.feasible);
      EXPECT_LE(*check.adaptation_spend, D);
      EXPECT_EQ(*check.adaptation_spend, *r.adaptation_spend);
      prev = r.solution.placement;
    }
  }
}

TEST(Periods, StationaryZeroBudgetStable) {
  const auto inst = small_instance();
  PeriodOptions opt;
  opt.trials = 6;
  opt.bootstrap_free = true;
  const auto results = run_periods(inst, churn_sequence(inst, 4, 0.0, 0.8, 1), 0.0, 7, opt);
  for (std::size_t t = 2; t < results.size(); ++t) EXPECT_LE(results[t].cloud_load, results[t - 1].cloud_load);
}

TEST(Periods, RawSpendWithinAdaptationFactor) {
  auto inst = small_instance(5);
  Placement xp(inst.num_stations(), inst.num_services(), 0);
  for (std::size_t n = 0; n < inst.num_stations(); ++n) xp(n, n % inst.num_services()) = 1;
  inst.previous_placement = xp;
  inst.adaptation_budget = 100.0;
  const auto frac = solve_relaxation(inst);
  const auto factors = bicriteria_factors(inst, frac);
  ASSERT_TRUE(factors.adaptation.has_value());
  int exceed = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto trial = randomized_rounding(inst, frac, trial_seed(1, t));
    if (*trial.raw_report.adaptation_spend > *factors.adaptation * 100.0 + 1e-9) ++exceed;
    EXPECT_LE(*trial.repaired_report.adaptation_spend, 100.0 + 1e-9);
  }
  EXPECT_EQ(exceed, 0);
}
