#include "jsprr/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "jsprr/parallel.hpp"
#include "jsprr/rng.hpp"

namespace jsprr {

Placement round_placement(const FractionalSolution& frac, std::uint64_t seed) {
  Rng rng(seed);
  Placement out(frac.placement.rows(), frac.placement.cols(), 0);
  for (std::size_t n = 0; n < out.rows(); ++n)
    for (std::size_t s = 0; s < out.cols(); ++s) out(n, s) = rng.bernoulli(frac.placement(n, s)) ? 1 : 0;
  return out;
}

RoutingDraw round_routing(const Instance& instance, const FractionalSolution& frac, const Placement& placement,
                          std::uint64_t seed) {
  RoutingDraw draw;
  draw.routing.assign(instance.num_users(), kCloud);
  draw.residual_mass.assign(instance.num_users(), 0.0);

  std::vector<int> candidates;
  std::vector<double> weights;
  for (std::size_t u = 0; u < instance.num_users(); ++u) {
    const auto& user = instance.users[u];
    const auto s = static_cast<std::size_t>(user.service);
    candidates.clear();
    weights.clear();
    double none_stored = 1.0;
    for (std::size_t k = 0; k < user.coverage.size(); ++k) {
      const auto n = static_cast<std::size_t>(user.coverage[k]);
      if (!placement(n, s)) continue;
      const double x = frac.placement(n, s);
      if (!(x > 0.0)) throw std::logic_error("station holds a service whose fractional placement is zero");
      candidates.push_back(user.coverage[k]);
      weights.push_back(frac.routing[u][k] / x);
      none_stored *= 1.0 - x;
    }
    if (candidates.empty()) continue;  // cloud

    const double cloud = std::max(0.0, (frac.cloud[u] - none_stored) / (1.0 - none_stored));
    candidates.push_back(kCloud);
    weights.push_back(cloud);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    draw.residual_mass[u] = 1.0 - total;
    if (total < 1.0) weights.back() += 1.0 - total;

    Rng rng(seed, "route", u);
    draw.routing[u] = candidates[rng.discrete(weights)];
  }
  return draw;
}

namespace {

constexpr Resource kRoutingResources[] = {Resource::Compute, Resource::Uplink, Resource::Downlink};

// Mutable working copy used by both repair phases.
class RepairState {
 public:
  RepairState(const Instance& inst, const IntegerSolution& sol)
      : inst_(inst), placement_(sol.placement), routing_(sol.routing), loads_(inst.num_stations()) {
    evaluate_solution(inst, sol);  // structural checks
    for (std::size_t n = 0; n < inst.num_stations(); ++n)
      for (std::size_t s = 0; s < inst.num_services(); ++s)
        if (placement_(n, s)) loads_[n][0] += inst.services[s].storage;
    for (std::size_t u = 0; u < routing_.size(); ++u)
      if (routing_[u] != kCloud) add_request(loads_, routing_[u], u, 1.0);
    if (inst.has_adaptation()) spend_ = adaptation_cost(inst, placement_);
  }

  IntegerSolution solution() const { return {placement_, routing_}; }

  void fix_storage_and_budget() {
    for (;;) {
      const bool over_budget = inst_.has_adaptation() && spend_ > *inst_.adaptation_budget + kFeasibilityTol;
      bool any_storage = false;
      for (std::size_t n = 0; n < inst_.num_stations(); ++n) any_storage |= storage_violated(n);
      if (!over_budget && !any_storage) return;

      // (increment, -storage freed, station, service), lexicographic minimum.
      struct Candidate {
        int increment;
        double storage;
        std::size_t station;
        std::size_t service;
      };
      std::optional<Candidate> best;
      for (std::size_t n = 0; n < inst_.num_stations(); ++n) {
        const bool at_violated = storage_violated(n);
        for (std::size_t s = 0; s < inst_.num_services(); ++s) {
          if (!placement_(n, s)) continue;
          const double r = inst_.services[s].storage;
          if (!(r > 0.0)) continue;
          const bool is_new = inst_.has_adaptation() && !(*inst_.previous_placement)(n, s);
          if (!at_violated && !(over_budget && is_new)) continue;
          auto scratch = loads_;
          const int inc = redirect_requests(n, s, scratch, nullptr);
          const Candidate c{inc, r, n, s};
          if (!best || c.increment < best->increment ||
              (c.increment == best->increment && c.storage > best->storage))
            best = c;
        }
      }
      if (!best) throw std::logic_error("repair: violated storage or budget but nothing removable");
      remove_placement(best->station, best->service);
    }
  }

  void fix_overloads() {
    for (;;) {
      std::size_t worst_station = 0;
      Resource worst_resource = Resource::Compute;
      double worst = 0.0;
      bool found = false;
      for (std::size_t n = 0; n < inst_.num_stations(); ++n) {
        for (Resource r : kRoutingResources) {
          const double cap = inst_.stations[n].capacity(r);
          const double load = loads_[n][static_cast<std::size_t>(r)];
          if (load <= cap + kFeasibilityTol) continue;
          const double factor = cap > 0.0 ? load / cap : std::numeric_limits<double>::infinity();
          if (!found || factor > worst) {
            found = true;
            worst = factor;
            worst_station = n;
            worst_resource = r;
          }
        }
      }
      if (!found) return;

      std::size_t pick = 0;
      double pick_req = -1.0;
      for (std::size_t u = 0; u < routing_.size(); ++u) {
        if (routing_[u] != static_cast<int>(worst_station)) continue;
        const double req = inst_.services[inst_.users[u].service].request_load(worst_resource);
        if (req > pick_req) {
          pick_req = req;
          pick = u;
        }
      }
      const int dest = best_destination(pick, static_cast<int>(worst_station), loads_);
      move_request(pick, dest, loads_);
    }
  }

 private:
  bool storage_violated(std::size_t n) const {
    return loads_[n][0] > inst_.stations[n].storage_cap + kFeasibilityTol;
  }

  void add_request(std::vector<ResourceVector>& loads, int station, std::size_t u, double sign) const {
    const auto& svc = inst_.services[inst_.users[u].service];
    auto& l = loads[static_cast<std::size_t>(station)];
    l[1] += sign * svc.compute;
    l[2] += sign * svc.uplink;
    l[3] += sign * svc.downlink;
  }

  bool fits(int station, std::size_t u, const std::vector<ResourceVector>& loads) const {
    const auto& svc = inst_.services[inst_.users[u].service];
    const auto& bs = inst_.stations[static_cast<std::size_t>(station)];
    for (Resource r : kRoutingResources)
      if (loads[static_cast<std::size_t>(station)][static_cast<std::size_t>(r)] + svc.request_load(r) >
          bs.capacity(r) + kFeasibilityTol)
        return false;
    return true;
  }

  // Smallest normalized residual over compute/uplink/downlink.
  double headroom(int station, const std::vector<ResourceVector>& loads) const {
    const auto& bs = inst_.stations[static_cast<std::size_t>(station)];
    double h = std::numeric_limits<double>::infinity();
    for (Resource r : kRoutingResources) {
      const double cap = bs.capacity(r);
      const double load = loads[static_cast<std::size_t>(station)][static_cast<std::size_t>(r)];
      h = std::min(h, cap > 0.0 ? (cap - load) / cap : 0.0);
    }
    return h;
  }

  // Covering station other than `exclude` that holds the service and has room
  // for the request, maximizing headroom (ties: lowest id); else the cloud.
  int best_destination(std::size_t u, int exclude, const std::vector<ResourceVector>& loads) const {
    const auto& user = inst_.users[u];
    int best = kCloud;
    double best_h = 0.0;
    for (int m : user.coverage) {
      if (m == exclude || !placement_(static_cast<std::size_t>(m), static_cast<std::size_t>(user.service))) continue;
      if (!fits(m, u, loads)) continue;
      const double h = headroom(m, loads);
      if (best == kCloud || h > best_h || (h == best_h && m < best)) {
        best = m;
        best_h = h;
      }
    }
    return best;
  }

  void move_request(std::size_t u, int dest, std::vector<ResourceVector>& loads) {
    add_request(loads, routing_[u], u, -1.0);
    routing_[u] = dest;
    if (dest != kCloud) add_request(loads, dest, u, 1.0);
  }

  // Re-routes every request served by (n, s) in ascending user id. With
  // `commit` null only `loads` changes; returns how many went to the cloud.
  int redirect_requests(std::size_t n, std::size_t s, std::vector<ResourceVector>& loads,
                        std::vector<int>* commit) const {
    int to_cloud = 0;
    for (std::size_t u = 0; u < routing_.size(); ++u) {
      if (routing_[u] != static_cast<int>(n) || static_cast<std::size_t>(inst_.users[u].service) != s) continue;
      add_request(loads, static_cast<int>(n), u, -1.0);
      const int dest = best_destination(u, static_cast<int>(n), loads);
      if (dest == kCloud) ++to_cloud;
      else add_request(loads, dest, u, 1.0);
      if (commit) (*commit)[u] = dest;
    }
    return to_cloud;
  }

  void remove_placement(std::size_t n, std::size_t s) {
    auto routing = routing_;
    redirect_requests(n, s, loads_, &routing);
    routing_ = std::move(routing);
    placement_(n, s) = 0;
    loads_[n][0] -= inst_.services[s].storage;
    if (inst_.has_adaptation() && !(*inst_.previous_placement)(n, s)) spend_ -= inst_.services[s].storage;
  }

  const Instance& inst_;
  Placement placement_;
  std::vector<int> routing_;
  std::vector<ResourceVector> loads_;
  double spend_ = 0.0;
};

}  // namespace

IntegerSolution repair(const Instance& instance, const IntegerSolution& sol) {
  RepairState state(instance, sol);
  state.fix_storage_and_budget();
  state.fix_overloads();
  return state.solution();
}

IntegerSolution repair_overloads(const Instance& instance, const IntegerSolution& sol) {
  RepairState state(instance, sol);
  state.fix_overloads();
  return state.solution();
}

RoundingTrial randomized_rounding(const Instance& instance, const FractionalSolution& frac, std::uint64_t seed) {
  RoundingTrial trial;
  trial.seed = seed;
  trial.raw.placement = round_placement(frac, derive_seed(seed, "placement", 0));
  auto draw = round_routing(instance, frac, trial.raw.placement, derive_seed(seed, "routing", 0));
  trial.raw.routing = std::move(draw.routing);
  trial.residual_mass = std::move(draw.residual_mass);
  trial.raw_report = evaluate_solution(instance, trial.raw);
  trial.repaired = trial.raw_report.feasible ? trial.raw : repair(instance, trial.raw);
  trial.repaired_report = evaluate_solution(instance, trial.repaired);
  if (!trial.repaired_report.feasible) throw std::logic_error("repair produced an infeasible solution");
  return trial;
}

double capacity_factor(double services, double denominator) {
  if (!(denominator > 0.0)) return std::numeric_limits<double>::infinity();
  return 3.0 * std::log(services) / denominator + 4.0;
}

double objective_factor(double services, double denominator) {
  if (!(denominator > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 * std::log(services) / denominator + 3.0;
}

BicriteriaReport bicriteria_factors(const Instance& instance, const FractionalSolution& frac) {
  const auto s = static_cast<double>(instance.num_services());
  BicriteriaReport report;
  for (const auto& bs : instance.stations) report.storage.push_back(capacity_factor(s, bs.storage_cap));
  report.compute = capacity_factor(s, frac.min_compute_load);
  report.uplink = capacity_factor(s, frac.min_uplink_load);
  report.downlink = capacity_factor(s, frac.min_downlink_load);
  report.objective = objective_factor(s, frac.objective);
  if (instance.adaptation_budget) report.adaptation = objective_factor(s, *instance.adaptation_budget);
  return report;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) { return derive_seed(master, "trial", trial); }

std::size_t pick_trial(const std::vector<RoundingTrial>& trials, Pick pick) {
  if (trials.empty()) throw std::invalid_argument("no rounding trials to pick from");
  std::vector<std::size_t> order(trials.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return trials[a].repaired_report.cloud_load < trials[b].repaired_report.cloud_load;
  });
  return pick == Pick::Best ? order.front() : order[(order.size() - 1) / 2];
}

SolveResult solve_randomized_rounding(const Instance& instance, const SolveOptions& options) {
  if (options.trials <= 0) throw std::invalid_argument("trials must be positive");
  SolveResult result;
  result.frac = solve_relaxation(instance, options.simplex);
  result.factors = bicriteria_factors(instance, result.frac);
  result.trials.resize(static_cast<std::size_t>(options.trials));
  parallel_for(result.trials.size(), options.workers, [&](std::size_t t) {
    result.trials[t] = randomized_rounding(instance, result.frac, trial_seed(options.seed, t));
  });
  result.chosen = pick_trial(result.trials, options.pick);
  return result;
}

}  // namespace jsprr
