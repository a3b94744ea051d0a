#pragma once

// Randomized rounding of the LP relaxation, feasibility repair, and the
// bi-criteria factors that bound how far raw rounded solutions can overshoot.

#include <cstdint>
#include <optional>
#include <vector>

#include "jsprr/model.hpp"
#include "jsprr/relaxation.hpp"

namespace jsprr {

/// Independent Bernoulli(x-dagger_ns) draw per (station, service).
Placement round_placement(const FractionalSolution& frac, std::uint64_t seed);

struct RoutingDraw {
  std::vector<int> routing;
  /// 1 - (sum of the raw destination weights) per user: positive mass was
  /// added to the cloud, negative mass was removed by normalization. Zero for
  /// users with no covering station holding their service.
  std::vector<double> residual_mass;
};

/// Destination per user given a rounded placement. With N'_u the covering
/// stations that received s_u, station n in N'_u gets weight
/// y_nu / x_{n,s_u} and the cloud gets
/// max(0, (y_lu - P) / (1 - P)),  P = prod_{n in N'_u} (1 - x_{n,s_u}).
/// Weights summing above 1 are normalized; a deficit goes to the cloud.
RoutingDraw round_routing(const Instance& instance, const FractionalSolution& frac, const Placement& placement,
                          std::uint64_t seed);

struct RoundingTrial {
  std::uint64_t seed = 0;
  IntegerSolution raw;
  IntegerSolution repaired;
  LoadReport raw_report;
  LoadReport repaired_report;
  std::vector<double> residual_mass;
};

RoundingTrial randomized_rounding(const Instance& instance, const FractionalSolution& frac, std::uint64_t seed);

/// Feasible solution from one that satisfies the routing and placement-link
/// constraints. Phase 1 removes placements (minimum cloud-load increment
/// first) until storage and the adaptation budget hold; phase 2 moves
/// requests off overloaded stations.
IntegerSolution repair(const Instance& instance, const IntegerSolution& sol);

/// Phase 2 only: clears compute/uplink/downlink overloads.
IntegerSolution repair_overloads(const Instance& instance, const IntegerSolution& sol);

struct BicriteriaReport {
  std::vector<double> storage;  // per station: 3 ln S / R_n + 4
  double compute = 0.0;         // 3 ln S / lambda + 4
  double uplink = 0.0;          // 3 ln S / mu + 4
  double downlink = 0.0;        // 3 ln S / nu + 4
  double objective = 0.0;       // 2 ln S / xi + 3
  std::optional<double> adaptation;  // 2 ln S / D + 3

  /// Chernoff epsilon behind a factor (factor - 1).
  static double epsilon(double factor) { return factor - 1.0; }
};

/// Factors with +inf where the denominator is zero.
BicriteriaReport bicriteria_factors(const Instance& instance, const FractionalSolution& frac);

double capacity_factor(double services, double denominator);
double objective_factor(double services, double denominator);

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

enum class Pick { Best, Median };

struct SolveOptions {
  int trials = 50;
  std::uint64_t seed = 1;
  Pick pick = Pick::Best;
  int workers = 1;
  lp::SimplexOptions simplex;
};

struct SolveResult {
  FractionalSolution frac;
  std::vector<RoundingTrial> trials;
  std::size_t chosen = 0;
  BicriteriaReport factors;

  const RoundingTrial& best() const { return trials.at(chosen); }
};

/// Relaxation, `trials` rounding trials, and the selected repaired trial.
SolveResult solve_randomized_rounding(const Instance& instance, const SolveOptions& options = {});

/// Trial index under the pick rule (ties by lower index).
std::size_t pick_trial(const std::vector<RoundingTrial>& trials, Pick pick);

}  // namespace jsprr
