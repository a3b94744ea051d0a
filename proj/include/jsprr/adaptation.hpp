#pragma once

// Multi-period operation under an adaptation budget: each period re-solves
// with the previous period's placement as x^p, so newly placed data per
// period stays within D.

#include <cstdint>
#include <string>
#include <vector>

#include "jsprr/model.hpp"
#include "jsprr/rounding.hpp"

namespace jsprr {

/// Requested service per user for one period.
using DemandSnapshot = std::vector<int>;

struct DemandSequence {
  std::vector<DemandSnapshot> snapshots;
  std::string period_label = "period";
};

struct ShiftedDemand {
  DemandSnapshot snapshot;
  std::size_t redrawn = 0;
};

/// Each user re-draws its service from Zipf(zipf_shape) over `services` with
/// probability `churn`, independently and reproducibly per user.
ShiftedDemand demand_shift(const DemandSnapshot& snapshot, double churn, double zipf_shape, int services,
                           std::uint64_t seed);

DemandSnapshot snapshot_of(const Instance& instance);

/// `periods` snapshots starting from the instance's own demand.
DemandSequence churn_sequence(const Instance& instance, int periods, double churn, double zipf_shape,
                              std::uint64_t seed);

struct PeriodOptions {
  int trials = 50;
  Pick pick = Pick::Best;
  int workers = 1;
  /// Exempt the first period from the budget instead of charging its
  /// whole placement against D.
  bool bootstrap_free = false;
};

struct PeriodResult {
  int period = 0;
  int cloud_load = 0;
  double lp_objective = 0.0;
  double raw_adaptation_spend = 0.0;
  std::optional<double> adaptation_spend;  // set when the budget applied this period
  bool budget_applied = false;
  IntegerSolution solution;
  LoadReport report;
};

/// Instance with the snapshot's demand, x^p and D attached.
Instance period_instance(const Instance& base, const DemandSnapshot& demand, const Placement& previous,
                         std::optional<double> budget);

/// Sequential per-period solve. A non-finite budget never binds and each
/// period equals an independent solve of that period's demand.
std::vector<PeriodResult> run_periods(const Instance& instance, const DemandSequence& demands, double budget,
                                      std::uint64_t seed, const PeriodOptions& options = {});

std::uint64_t period_seed(std::uint64_t master, std::size_t period);

}  // namespace jsprr
