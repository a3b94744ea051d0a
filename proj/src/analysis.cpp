#include "jsprr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "jsprr/baselines.hpp"

namespace jsprr {

double greedy_guarantee_ratio(double delta, double total_storage) {
  if (!(delta < 1.0)) return 0.0;
  return 0.5 * ((1.0 - delta) / (1.0 + delta)) / (1.0 + total_storage * delta / (1.0 - delta));
}

SubmodularityReport delta_bound(const Instance& instance) {
  require_valid(instance);
  if (!instance.is_unit()) throw std::invalid_argument("delta bound defined for unit requirements only");
  SubmodularityReport report;
  report.phi.assign(instance.num_stations(), 0);
  for (const auto& user : instance.users)
    for (int n : user.coverage) ++report.phi[static_cast<std::size_t>(n)];

  double worst = 1.0;
  for (std::size_t n = 0; n < instance.num_stations(); ++n) {
    const auto& bs = instance.stations[n];
    const double phi = report.phi[n];
    for (double cap : {bs.compute_cap, bs.uplink_cap, bs.downlink_cap}) {
      if (phi == 0.0) continue;
      worst = std::max(worst, cap > 0.0 ? phi / cap : std::numeric_limits<double>::infinity());
    }
  }
  report.delta = std::isinf(worst) ? 1.0 : 1.0 - 1.0 / worst;
  double total_storage = 0.0;
  for (const auto& bs : instance.stations) total_storage += bs.storage_cap;
  report.ratio = greedy_guarantee_ratio(report.delta, total_storage);
  return report;
}

Instance counterexample_instance(Resource bottleneck, double capacity) {
  Instance inst;
  inst.services = {{0, 1, 1, 1, 1}, {1, 1, 1, 1, 1}};
  constexpr double plenty = 2.0;  // both requests fit
  for (int n = 0; n < 2; ++n) {
    BaseStation bs{n, plenty, plenty, plenty, plenty, std::nullopt};
    switch (bottleneck) {
      case Resource::Compute: bs.compute_cap = capacity; break;
      case Resource::Uplink: bs.uplink_cap = capacity; break;
      case Resource::Downlink: bs.downlink_cap = capacity; break;
      case Resource::Storage: bs.storage_cap = capacity; break;
    }
    inst.stations.push_back(bs);
  }
  inst.users = {{0, {0, 1}, 0, std::nullopt}, {1, {0, 1}, 1, std::nullopt}};
  return inst;
}

CounterexampleReport verify_counterexample(Resource bottleneck, double capacity) {
  const Instance inst = counterexample_instance(bottleneck, capacity);
  // e_ns with 1-based (station, service): e11 -> (0,0), e21 -> (1,0), e12 -> (0,1).
  const PlacementSet a{{0, 0}};
  const PlacementSet b{{0, 0}, {1, 0}};
  CounterexampleReport report;
  report.bottleneck = bottleneck;
  report.capacity = capacity;
  report.f_a = max_served_given_placement(inst, a);
  report.f_b = max_served_given_placement(inst, b);
  report.f_a_e12 = max_served_given_placement(inst, a.with(0, 1));
  report.f_b_e12 = max_served_given_placement(inst, b.with(0, 1));
  return report;
}

int uncongested_served(const Instance& instance, const Placement& placement) {
  int served = 0;
  for (const auto& user : instance.users)
    for (int n : user.coverage)
      if (placement(static_cast<std::size_t>(n), static_cast<std::size_t>(user.service))) {
        ++served;
        break;
      }
  return served;
}

GuaranteeCheck greedy_guarantee_check(const Instance& instance) {
  GuaranteeCheck check;
  check.bound = delta_bound(instance);
  const auto oracle = optimal_bruteforce(instance);
  check.optimum_served = static_cast<int>(instance.num_users()) - oracle.cloud_load;
  check.greedy_served = max_served_flow(instance, greedy_placement(instance));
  check.holds = check.greedy_served + 1e-12 >= check.bound.ratio * check.optimum_served;
  return check;
}

}  // namespace jsprr
