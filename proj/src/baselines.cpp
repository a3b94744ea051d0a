#include "jsprr/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "jsprr/maxflow.hpp"
#include "jsprr/rounding.hpp"

namespace jsprr {

PlacementSet PlacementSet::from_matrix(const Placement& placement) {
  PlacementSet out;
  for (std::size_t n = 0; n < placement.rows(); ++n)
    for (std::size_t s = 0; s < placement.cols(); ++s)
      if (placement(n, s)) out.elements.insert({static_cast<int>(n), static_cast<int>(s)});
  return out;
}

Placement PlacementSet::to_matrix(const Instance& instance) const {
  Placement out(instance.num_stations(), instance.num_services(), 0);
  for (const auto& [n, s] : elements) {
    if (n < 0 || s < 0 || static_cast<std::size_t>(n) >= out.rows() || static_cast<std::size_t>(s) >= out.cols())
      throw std::out_of_range("placement element (" + std::to_string(n) + "," + std::to_string(s) +
                              ") outside instance");
    out(static_cast<std::size_t>(n), static_cast<std::size_t>(s)) = 1;
  }
  return out;
}

PlacementSet PlacementSet::with(int station, int service) const {
  PlacementSet out = *this;
  out.elements.insert({station, service});
  return out;
}

Placement greedy_placement(const Instance& instance) {
  require_valid(instance);
  const std::size_t n_stations = instance.num_stations();
  const std::size_t n_services = instance.num_services();
  Placement placement(n_stations, n_services, 0);
  std::vector<double> residual(n_stations);
  for (std::size_t n = 0; n < n_stations; ++n) residual[n] = instance.stations[n].storage_cap;

  // gain(n, s): users covered by n requesting s with no covering holder yet.
  Matrix<int> gain(n_stations, n_services, 0);
  for (const auto& user : instance.users)
    for (int n : user.coverage) ++gain(static_cast<std::size_t>(n), static_cast<std::size_t>(user.service));
  std::vector<char> served(instance.num_users(), 0);

  for (;;) {
    int best_gain = 0;
    std::size_t best_n = 0, best_s = 0;
    for (std::size_t n = 0; n < n_stations; ++n)
      for (std::size_t s = 0; s < n_services; ++s) {
        if (placement(n, s) || gain(n, s) <= best_gain) continue;
        if (instance.services[s].storage > residual[n] + kFeasibilityTol) continue;
        best_gain = gain(n, s);
        best_n = n;
        best_s = s;
      }
    if (best_gain == 0) break;
    placement(best_n, best_s) = 1;
    residual[best_n] -= instance.services[best_s].storage;
    for (std::size_t u = 0; u < instance.num_users(); ++u) {
      const auto& user = instance.users[u];
      if (served[u] || static_cast<std::size_t>(user.service) != best_s) continue;
      if (std::find(user.coverage.begin(), user.coverage.end(), static_cast<int>(best_n)) == user.coverage.end())
        continue;
      served[u] = 1;
      for (int n : user.coverage) --gain(static_cast<std::size_t>(n), best_s);
    }
  }
  return placement;
}

GreedyResult greedy_cache(const Instance& instance) {
  GreedyResult result;
  result.raw.placement = greedy_placement(instance);
  result.raw.routing.assign(instance.num_users(), kCloud);
  for (std::size_t u = 0; u < instance.num_users(); ++u) {
    const auto& user = instance.users[u];
    int best = kCloud;
    double best_d = std::numeric_limits<double>::infinity();
    for (int n : user.coverage) {
      if (!result.raw.placement(static_cast<std::size_t>(n), static_cast<std::size_t>(user.service))) continue;
      const auto& site = instance.stations[static_cast<std::size_t>(n)].position;
      // Without coordinates every holder is equally near; lowest id wins.
      const double d = (site && user.position) ? std::hypot(site->x - user.position->x, site->y - user.position->y)
                                               : 0.0;
      if (best == kCloud || d < best_d || (d == best_d && n < best)) {
        best = n;
        best_d = d;
      }
    }
    result.raw.routing[u] = best;
  }
  result.repaired = repair_overloads(instance, result.raw);
  return result;
}

int max_served_flow(const Instance& instance, const Placement& placement) {
  if (!instance.is_unit()) throw std::invalid_argument("max-flow evaluation needs unit requirements");
  const int n_users = static_cast<int>(instance.num_users());
  const int n_stations = static_cast<int>(instance.num_stations());
  const int source = 0, sink = 1;
  auto user_node = [](int u) { return 2 + u; };
  auto station_node = [&](int n) { return 2 + n_users + n; };
  MaxFlow flow(2 + n_users + n_stations);
  for (int u = 0; u < n_users; ++u) {
    const auto& user = instance.users[static_cast<std::size_t>(u)];
    flow.add_edge(source, user_node(u), 1);
    for (int n : user.coverage)
      if (placement(static_cast<std::size_t>(n), static_cast<std::size_t>(user.service)))
        flow.add_edge(user_node(u), station_node(n), 1);
  }
  for (int n = 0; n < n_stations; ++n) {
    const auto& bs = instance.stations[static_cast<std::size_t>(n)];
    const double cap = std::min({bs.compute_cap, bs.uplink_cap, bs.downlink_cap, static_cast<double>(n_users)});
    flow.add_edge(station_node(n), sink, static_cast<std::int64_t>(std::floor(cap + kFeasibilityTol)));
  }
  return static_cast<int>(flow.solve(source, sink));
}

namespace {

// Depth-first routing search shared by the exhaustive evaluators. Visits each
// user's covering holders in coverage order, then the cloud.
class RoutingSearch {
 public:
  RoutingSearch(const Instance& inst, const Placement& placement)
      : inst_(inst), placement_(placement), loads_(inst.num_stations()), current_(inst.num_users(), kCloud) {}

  /// Minimum cloud load strictly below `bound`, or -1 if none exists.
  int run(int bound) {
    best_ = bound;
    found_ = false;
    descend(0, 0);
    return found_ ? best_ : -1;
  }

  const std::vector<int>& best_routing() const { return best_routing_; }

 private:
  void descend(std::size_t u, int cloud) {
    if (cloud >= best_) return;
    if (u == inst_.num_users()) {
      best_ = cloud;
      best_routing_ = current_;
      found_ = true;
      return;
    }
    const auto& user = inst_.users[u];
    const auto& svc = inst_.services[static_cast<std::size_t>(user.service)];
    for (int n : user.coverage) {
      const auto sn = static_cast<std::size_t>(n);
      if (!placement_(sn, static_cast<std::size_t>(user.service))) continue;
      const auto& bs = inst_.stations[sn];
      auto& l = loads_[sn];
      if (l[1] + svc.compute > bs.compute_cap + kFeasibilityTol || l[2] + svc.uplink > bs.uplink_cap + kFeasibilityTol ||
          l[3] + svc.downlink > bs.downlink_cap + kFeasibilityTol)
        continue;
      const ResourceVector saved = l;
      l[1] += svc.compute;
      l[2] += svc.uplink;
      l[3] += svc.downlink;
      current_[u] = n;
      descend(u + 1, cloud);
      l = saved;
    }
    current_[u] = kCloud;
    descend(u + 1, cloud + 1);
  }

  const Instance& inst_;
  const Placement& placement_;
  std::vector<ResourceVector> loads_;
  std::vector<int> current_;
  std::vector<int> best_routing_;
  int best_ = 0;
  bool found_ = false;
};

}  // namespace

int max_served_bruteforce(const Instance& instance, const Placement& placement) {
  if (instance.num_users() > kMaxBruteForceUsers)
    throw OracleLimitError("exhaustive routing limited to " + std::to_string(kMaxBruteForceUsers) + " users");
  RoutingSearch search(instance, placement);
  const int cloud = search.run(static_cast<int>(instance.num_users()) + 1);
  return static_cast<int>(instance.num_users()) - cloud;
}

int max_served_given_placement(const Instance& instance, const PlacementSet& placement) {
  const Placement matrix = placement.to_matrix(instance);
  if (instance.is_unit()) return max_served_flow(instance, matrix);
  return max_served_bruteforce(instance, matrix);
}

int nonoverlapping_optimal(const Instance& instance) {
  require_valid(instance);
  if (!instance.is_unit()) throw std::invalid_argument("closed form needs unit requirements");
  for (const auto& user : instance.users)
    if (user.coverage.size() > 1) throw std::invalid_argument("closed form needs disjoint coverage (|N_u| <= 1)");

  int served_total = 0;
  for (std::size_t n = 0; n < instance.num_stations(); ++n) {
    std::vector<int> demand(instance.num_services(), 0);
    for (const auto& user : instance.users)
      if (!user.coverage.empty() && static_cast<std::size_t>(user.coverage.front()) == n)
        ++demand[static_cast<std::size_t>(user.service)];
    std::sort(demand.begin(), demand.end(), std::greater<>());
    const auto& bs = instance.stations[n];
    const auto slots = static_cast<std::size_t>(std::floor(bs.storage_cap + kFeasibilityTol));
    int stored_demand = 0;
    for (std::size_t i = 0; i < std::min(slots, demand.size()); ++i) stored_demand += demand[i];
    const double cap = std::floor(std::min({bs.compute_cap, bs.uplink_cap, bs.downlink_cap}) + kFeasibilityTol);
    served_total += static_cast<int>(std::min<double>(stored_demand, cap));
  }
  return static_cast<int>(instance.num_users()) - served_total;
}

OracleResult optimal_bruteforce(const Instance& instance) {
  require_valid(instance);
  const std::size_t n_stations = instance.num_stations();
  const std::size_t n_services = instance.num_services();
  const std::size_t bits = n_stations * n_services;
  if (bits > kMaxBruteForcePlacementBits || instance.num_users() > kMaxBruteForceUsers)
    throw OracleLimitError("oracle limited to N*S <= " + std::to_string(kMaxBruteForcePlacementBits) +
                           " and U <= " + std::to_string(kMaxBruteForceUsers));

  OracleResult best{all_cloud_solution(instance), static_cast<int>(instance.num_users())};
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    Placement placement(n_stations, n_services, 0);
    std::vector<double> stored(n_stations, 0.0);
    for (std::size_t b = 0; b < bits; ++b)
      if (mask >> b & 1u) {
        placement(b / n_services, b % n_services) = 1;
        stored[b / n_services] += instance.services[b % n_services].storage;
      }
    bool ok = true;
    for (std::size_t n = 0; n < n_stations && ok; ++n)
      ok = stored[n] <= instance.stations[n].storage_cap + kFeasibilityTol;
    if (ok && instance.has_adaptation())
      ok = adaptation_cost(instance, placement) <= *instance.adaptation_budget + kFeasibilityTol;
    if (!ok) continue;

    RoutingSearch search(instance, placement);
    const int cloud = search.run(best.cloud_load);
    if (cloud >= 0) {
      best.cloud_load = cloud;
      best.solution = {std::move(placement), search.best_routing()};
    }
    if (best.cloud_load == 0) break;
  }
  return best;
}

}  // namespace jsprr
