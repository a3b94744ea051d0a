#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "jsprr/analysis.hpp"
#include "jsprr/generator.hpp"
#include "jsprr/relaxation.hpp"
#include "support.hpp"

using namespace jsprr;
using support::Bs;

namespace {

void expect_lp_feasible(const Instance& inst, const FractionalSolution& f) {
  const double tol = 1e-8;
  std::vector<ResourceVector> loads(inst.num_stations(), ResourceVector{});
  for (std::size_t n = 0; n < inst.num_stations(); ++n)
    for (std::size_t s = 0; s < inst.num_services(); ++s) {
      EXPECT_GE(f.placement(n, s), -tol);
      EXPECT_LE(f.placement(n, s), 1 + tol);
      loads[n][0] += f.placement(n, s) * inst.services[s].storage;
    }
  for (std::size_t u = 0; u < inst.num_users(); ++u) {
    const auto& user = inst.users[u];
    double sum = f.cloud[u];
    for (std::size_t k = 0; k < user.coverage.size(); ++k) {
      const int n = user.coverage[k];
      const double y = f.routing[u][k];
      sum += y;
      EXPECT_LE(y, f.placement(n, user.service) + tol);
      const auto& svc = inst.services[user.service];
      loads[n][1] += y * svc.compute;
      loads[n][2] += y * svc.uplink;
      loads[n][3] += y * svc.downlink;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  for (std::size_t n = 0; n < inst.num_stations(); ++n)
    for (std::size_t r = 0; r < kNumResources; ++r) {
      EXPECT_LE(loads[n][r], inst.stations[n].capacity(static_cast<Resource>(r)) + tol);
      EXPECT_NEAR(loads[n][r], f.loads[n][r], 1e-9);
    }
  double cloud = 0.0;
  for (double c : f.cloud) cloud += c;
  EXPECT_NEAR(cloud, f.objective, 1e-9);
}

}  // namespace

TEST(BuildLp, SingleStationCounts) {
  const auto inst = support::unit_instance({{1, 1, 1, 1}}, 1, {{{0}, 0}});
  const auto p = build_lp(inst);
  EXPECT_EQ(p.num_columns(), 3u);
  EXPECT_EQ(p.num_rows(), 1u + 1u + 4u);
}

TEST(BuildLp, DefaultInstanceSparseRouting) {
  const auto inst = generate_instance({});
  const auto p = build_lp(inst);
  std::size_t expected_y = 0, links = 0;
  for (const auto& u : inst.users) {
    expected_y += u.coverage.size() + 1;
    links += u.coverage.size();
  }
  EXPECT_EQ(p.num_routing_columns(), expected_y);
  EXPECT_LT(expected_y, inst.num_users() * (inst.num_stations() + 1));
  EXPECT_EQ(p.num_rows(), inst.num_users() + links + 4 * inst.num_stations());
  EXPECT_EQ(build_lp([&] {
              auto i = inst;
              i.previous_placement = Placement(9, 100, 0);
              i.adaptation_budget = 10.0;
              return i;
            }(), true)
                .num_rows(),
            p.num_rows() + 1);
}

TEST(BuildLp, AdaptationFlagRequiresData) {
  const auto inst = support::unit_instance({{1, 1, 1, 1}}, 1, {{{0}, 0}});
  EXPECT_THROW(build_lp(inst, true), ValidationError);
}

TEST(SolveLp, ZeroBudgetPlacesNothing) {
  auto inst = support::unit_instance({{2, 2, 2, 2}}, 2, {{{0}, 0}, {{0}, 1}});
  inst.previous_placement = Placement(1, 2, 0);
  inst.adaptation_budget = 0.0;
  const auto f = solve_lp(build_lp(inst, true));
  EXPECT_EQ(f.placement(0, 0), 0.0);
  EXPECT_EQ(f.placement(0, 1), 0.0);
  EXPECT_NEAR(f.objective, 2.0, 1e-12);
}

TEST(SolveLp, UnconstrainedSingleUser) {
  const auto inst = support::unit_instance({{5, 5, 5, 5}}, 1, {{{0}, 0}});
  const auto f = solve_relaxation(inst);
  EXPECT_NEAR(f.objective, 0.0, 1e-12);
  EXPECT_NEAR(f.placement(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(f.routing[0][0], 1.0, 1e-12);
  const auto s = lp_stats(f);
  EXPECT_NEAR(s.lambda, 1.0, 1e-12);  // single station: its own compute load
}

TEST(SolveLp, Counterexample) {
  const auto f = solve_relaxation(counterexample_instance());
  EXPECT_NEAR(f.objective, 0.0, 1e-12);
}

TEST(SolveLp, AllCloudStats) {
  const auto inst = support::unit_instance({{0, 0, 0, 0}, {0, 3, 3, 3}}, 2, {{{0, 1}, 0}, {{}, 1}});
  const auto s = lp_stats(solve_relaxation(inst));
  EXPECT_NEAR(s.objective, 2.0, 1e-12);
  EXPECT_EQ(s.lambda, 0.0);
  EXPECT_EQ(s.mu, 0.0);
  EXPECT_EQ(s.nu, 0.0);
}

TEST(SolveLp, DefaultInstanceMatchesExternalSolver) {
  // Optimum of the same program computed with an independent LP solver.
  const auto inst = generate_instance({});
  const auto f = solve_relaxation(inst);
  EXPECT_NEAR(f.objective, 237.79882498622462, 1e-6);
  expect_lp_feasible(inst, f);
  const auto s = lp_stats(f);
  for (const auto& bs : inst.stations) EXPECT_LE(s.lambda, bs.compute_cap);
}

TEST(SolveLp, LowerBoundsReferenceOptimum) {
  std::mt19937_64 gen(21);
  for (int rep = 0; rep < 150; ++rep) {
    const auto inst = support::random_tiny(gen, {.unit = rep % 2 == 0, .adaptation = rep % 3 == 0});
    const auto f = solve_relaxation(inst);
    expect_lp_feasible(inst, f);
    EXPECT_LE(f.objective, support::reference_optimum(inst) + 1e-9);
  }
}

TEST(SolveLp, UncongestedDisjointEqualsPlacementOptimum) {
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 60; ++rep) {
    auto inst = support::random_tiny(gen, {.unit = true, .disjoint = true});
    for (auto& bs : inst.stations) bs.compute_cap = bs.uplink_cap = bs.downlink_cap = 1e6;
    EXPECT_NEAR(solve_relaxation(inst).objective, support::reference_optimum(inst), 1e-9);
  }
}

TEST(WriteLp, ContainsSections) {
  const auto inst = support::unit_instance({{1, 1, 1, 1}}, 1, {{{0}, 0}});
  std::ostringstream os;
  write_lp(build_lp(inst), os);
  const auto text = os.str();
  for (const char* s : {"Minimize", "Subject To", "Bounds", "End"}) EXPECT_NE(text.find(s), std::string::npos) << s;
}
