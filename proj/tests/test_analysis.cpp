#include <gtest/gtest.h>

#include <random>

#include "jsprr/analysis.hpp"
#include "jsprr/baselines.hpp"
#include "support.hpp"

using namespace jsprr;
using support::Usr;

TEST(Delta, FiftyPercentOverDemand) {
  // Three requests against two units of compute at the bottleneck station.
  const auto inst = support::unit_instance({{2, 2, 5, 5}, {1, 5, 5, 5}}, 2,
                                           {{{0}, 0}, {{0, 1}, 1}, {{0}, 1}});
  const auto r = delta_bound(inst);
  EXPECT_EQ(r.phi, (std::vector<int>{3, 1}));
  EXPECT_DOUBLE_EQ(r.delta, 1.0 / 3.0);
  const double R = 3.0;
  EXPECT_NEAR(r.ratio, 0.25 / (1.0 + R / 2.0), 1e-15);
  EXPECT_EQ(r.phi_convention, "all-services-stored");
}

TEST(Delta, NoOverDemand) {
  const auto inst = support::unit_instance({{2, 5, 5, 5}}, 2, {{{0}, 0}, {{0}, 1}});
  const auto r = delta_bound(inst);
  EXPECT_EQ(r.delta, 0.0);
  EXPECT_EQ(r.ratio, 0.5);
}

TEST(Delta, RequiresUnitInstance) {
  const auto inst = support::make_instance({{2, 1, 1, 1}}, {{2, 1, 1, 1}}, {{{0}, 0}});
  EXPECT_THROW(delta_bound(inst), std::invalid_argument);
}

TEST(Delta, RangeOnRandomInstances) {
  std::mt19937_64 gen(6);
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = support::random_tiny(gen, {.unit = true});
    const auto r = delta_bound(inst);
    EXPECT_GE(r.delta, 0.0);
    EXPECT_LE(r.delta, 1.0);
    EXPECT_GE(r.ratio, 0.0);
    EXPECT_LE(r.ratio, 0.5);
  }
}

TEST(Ratio, MonotoneInDeltaAndStorage) {
  double prev = greedy_guarantee_ratio(0.0, 4.0);
  EXPECT_EQ(prev, 0.5);
  for (double d = 0.05; d < 1.0; d += 0.05) {
    const double now = greedy_guarantee_ratio(d, 4.0);
    EXPECT_LE(now, prev);
    prev = now;
  }
  for (double R = 1.0; R < 20.0; R += 1.0) EXPECT_LE(greedy_guarantee_ratio(0.3, R + 1), greedy_guarantee_ratio(0.3, R));
}

TEST(Counterexample, ComputeBottleneck) {
  const auto r = verify_counterexample();
  EXPECT_EQ(r.f_a, 1);
  EXPECT_EQ(r.f_b, 1);
  EXPECT_EQ(r.f_a_e12, 1);
  EXPECT_EQ(r.f_b_e12, 2);
  EXPECT_EQ(r.marginal_a(), 0);
  EXPECT_EQ(r.marginal_b(), 1);
  EXPECT_TRUE(r.submodularity_violated());
}

TEST(Counterexample, BandwidthBottleneck) {
  for (auto res : {Resource::Uplink, Resource::Downlink}) {
    const auto r = verify_counterexample(res, 1.0);
    EXPECT_EQ(r.marginal_a(), 0);
    EXPECT_EQ(r.marginal_b(), 1);
  }
}

TEST(Counterexample, PatternVanishesWithCapacityTwo) {
  const auto r = verify_counterexample(Resource::Compute, 2.0);
  EXPECT_EQ(r.f_a_e12, 2);
  EXPECT_FALSE(r.submodularity_violated());
}

TEST(Guarantee, CounterexampleInstance) {
  const auto c = greedy_guarantee_check(counterexample_instance());
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.optimum_served, 2);
}

TEST(Guarantee, DeltaZeroHalfOfOptimum) {
  const auto inst = support::unit_instance({{1, 5, 5, 5}, {1, 5, 5, 5}}, 2,
                                           {{{0}, 0}, {{0, 1}, 1}, {{1}, 1}, {{1}, 0}});
  const auto c = greedy_guarantee_check(inst);
  EXPECT_EQ(c.bound.delta, 0.0);
  EXPECT_GE(c.greedy_served, 0.5 * c.optimum_served);
  EXPECT_TRUE(c.holds);
}

TEST(Guarantee, RandomUnitInstances) {
  std::mt19937_64 gen(19);
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = support::random_tiny(gen, {.unit = true});
    const auto c = greedy_guarantee_check(inst);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.optimum_served, static_cast<int>(inst.num_users()) - support::reference_optimum(inst));
  }
}

TEST(Uncongested, DominatesCongested) {
  std::mt19937_64 gen(23);
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = support::random_tiny(gen, {.unit = true});
    Placement p(inst.num_stations(), inst.num_services(), 0);
    for (auto& v : p.data()) v = gen() % 2;
    EXPECT_GE(uncongested_served(inst, p), max_served_flow(inst, p));
  }
}
