#pragma once

// Comparison algorithms and exact oracles:
//  - greedy caching (place the pair that cuts cloud load most, route to the
//    nearest holder, ignoring compute and bandwidth),
//  - maximum servable requests f(E) for a fixed placement,
//  - the closed form for disjoint coverage with unit requirements,
//  - exhaustive search on tiny instances.

#include <set>
#include <stdexcept>
#include <utility>

#include "jsprr/model.hpp"

namespace jsprr {

/// Set of placement elements e_ns = (station n, service s).
struct PlacementSet {
  std::set<std::pair<int, int>> elements;

  PlacementSet() = default;
  PlacementSet(std::initializer_list<std::pair<int, int>> init) : elements(init) {}

  static PlacementSet from_matrix(const Placement& placement);
  Placement to_matrix(const Instance& instance) const;
  PlacementSet with(int station, int service) const;
  bool contains(int station, int service) const { return elements.count({station, service}) > 0; }
  std::size_t size() const { return elements.size(); }
};

class OracleLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GreedyResult {
  IntegerSolution raw;       // routing ignores compute and bandwidth
  IntegerSolution repaired;  // overloads moved off by phase-2 repair
};

GreedyResult greedy_cache(const Instance& instance);

/// Greedy placement only (the set the caching greedy picks).
Placement greedy_placement(const Instance& instance);

/// f(E): unit-requirement instances use max-flow, others exhaustive search
/// (at most kMaxBruteForceUsers users).
int max_served_given_placement(const Instance& instance, const PlacementSet& placement);

/// Max-flow route; requires unit requirements.
int max_served_flow(const Instance& instance, const Placement& placement);

/// Exhaustive route; any requirements, at most kMaxBruteForceUsers users.
int max_served_bruteforce(const Instance& instance, const Placement& placement);

/// Cloud load of the optimum for disjoint coverage (|N_u| <= 1) and unit
/// requirements. Throws std::invalid_argument when preconditions fail.
int nonoverlapping_optimal(const Instance& instance);

struct OracleResult {
  IntegerSolution solution;
  int cloud_load = 0;
};

inline constexpr std::size_t kMaxBruteForceUsers = 8;
inline constexpr std::size_t kMaxBruteForcePlacementBits = 12;

/// Exact optimum over storage- (and budget-) feasible placements and all
/// capacity-feasible routings. First optimum in enumeration order: placement
/// bitmask ascending (bit n*S+s), then each user's stations in coverage
/// order before the cloud. Throws OracleLimitError past the size caps.
OracleResult optimal_bruteforce(const Instance& instance);

}  // namespace jsprr
