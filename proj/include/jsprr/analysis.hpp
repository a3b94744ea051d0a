#pragma once

// Approximate-submodularity diagnostics for unit-requirement instances.
//
// With Phi_n the requests from users covered by station n (every service
// assumed stored, so the bound holds for any placement),
//   delta = 1 - 1 / max_n max{Phi_n/C_n, Phi_n/Bu_n, Phi_n/Bd_n, 1}
// and the greedy placement serves at least
//   1/2 * (1-delta)/(1+delta) * 1/(1 + sum_n R_n * delta/(1-delta))
// of the optimum.

#include <string>
#include <vector>

#include "jsprr/model.hpp"

namespace jsprr {

struct SubmodularityReport {
  std::vector<int> phi;  // per station
  double delta = 0.0;
  double ratio = 0.5;
  std::string phi_convention = "all-services-stored";
};

/// Throws std::invalid_argument for non-unit instances.
SubmodularityReport delta_bound(const Instance& instance);

/// Guarantee ratio for a given delta and total storage (in unit slots).
double greedy_guarantee_ratio(double delta, double total_storage);

struct CounterexampleReport {
  Resource bottleneck = Resource::Compute;
  double capacity = 1.0;
  int f_a = 0;         // A = {e11}
  int f_b = 0;         // B = {e11, e21}
  int f_a_e12 = 0;     // A + e12
  int f_b_e12 = 0;     // B + e12
  int marginal_a() const { return f_a_e12 - f_a; }
  int marginal_b() const { return f_b_e12 - f_b; }
  bool submodularity_violated() const { return marginal_b() > marginal_a(); }
};

/// Two stations covering two users who request different services. The
/// bottleneck resource gets `capacity` at both stations; every other
/// resource is abundant.
Instance counterexample_instance(Resource bottleneck = Resource::Compute, double capacity = 1.0);

/// Evaluates f on A, B, A+e12, B+e12 of the two-station construction.
CounterexampleReport verify_counterexample(Resource bottleneck = Resource::Compute, double capacity = 1.0);

struct GuaranteeCheck {
  SubmodularityReport bound;
  int greedy_served = 0;
  int optimum_served = 0;
  bool holds = false;
};

/// f(greedy placement) >= ratio * optimum on an oracle-sized unit instance.
GuaranteeCheck greedy_guarantee_check(const Instance& instance);

/// F(E): served requests when compute and bandwidth are uncongested.
int uncongested_served(const Instance& instance, const Placement& placement);

}  // namespace jsprr
