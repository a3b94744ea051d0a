#include "jsprr/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jsprr {

const char* to_string(Resource r) {
  switch (r) {
    case Resource::Storage: return "storage";
    case Resource::Compute: return "compute";
    case Resource::Uplink: return "uplink";
    case Resource::Downlink: return "downlink";
  }
  return "?";
}

double ServiceSpec::request_load(Resource r) const {
  switch (r) {
    case Resource::Compute: return compute;
    case Resource::Uplink: return uplink;
    case Resource::Downlink: return downlink;
    case Resource::Storage: break;
  }
  return 0.0;
}

double BaseStation::capacity(Resource r) const {
  switch (r) {
    case Resource::Storage: return storage_cap;
    case Resource::Compute: return compute_cap;
    case Resource::Uplink: return uplink_cap;
    case Resource::Downlink: return downlink_cap;
  }
  return 0.0;
}

bool Instance::is_unit() const {
  return std::all_of(services.begin(), services.end(), [](const ServiceSpec& s) {
    return s.storage == 1.0 && s.compute == 1.0 && s.uplink == 1.0 && s.downlink == 1.0;
  });
}

namespace {

bool same_position(const std::optional<Position>& a, const std::optional<Position>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->x == b->x && a->y == b->y);
}

bool nonneg_finite(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

bool operator==(const Instance& a, const Instance& b) {
  if (a.services.size() != b.services.size() || a.stations.size() != b.stations.size() ||
      a.users.size() != b.users.size())
    return false;
  for (std::size_t i = 0; i < a.services.size(); ++i) {
    const auto& p = a.services[i];
    const auto& q = b.services[i];
    if (p.id != q.id || p.storage != q.storage || p.compute != q.compute || p.uplink != q.uplink ||
        p.downlink != q.downlink)
      return false;
  }
  for (std::size_t i = 0; i < a.stations.size(); ++i) {
    const auto& p = a.stations[i];
    const auto& q = b.stations[i];
    if (p.id != q.id || p.storage_cap != q.storage_cap || p.compute_cap != q.compute_cap ||
        p.uplink_cap != q.uplink_cap || p.downlink_cap != q.downlink_cap ||
        !same_position(p.position, q.position))
      return false;
  }
  for (std::size_t i = 0; i < a.users.size(); ++i) {
    const auto& p = a.users[i];
    const auto& q = b.users[i];
    if (p.id != q.id || p.coverage != q.coverage || p.service != q.service ||
        !same_position(p.position, q.position))
      return false;
  }
  return a.previous_placement == b.previous_placement && a.adaptation_budget == b.adaptation_budget;
}

ValidationReport validate_instance(const Instance& instance) {
  ValidationReport report;
  auto add = [&](const std::string& msg) { report.violations.push_back(msg); };
  const int n_stations = static_cast<int>(instance.num_stations());
  const int n_services = static_cast<int>(instance.num_services());

  for (int s = 0; s < n_services; ++s) {
    const auto& svc = instance.services[s];
    if (svc.id != s) add("service " + std::to_string(s) + ": id " + std::to_string(svc.id) + " not contiguous");
    if (!nonneg_finite(svc.storage) || !nonneg_finite(svc.compute) || !nonneg_finite(svc.uplink) ||
        !nonneg_finite(svc.downlink))
      add("service " + std::to_string(s) + ": requirement negative or not finite");
  }
  for (int n = 0; n < n_stations; ++n) {
    const auto& bs = instance.stations[n];
    if (bs.id != n) add("station " + std::to_string(n) + ": id " + std::to_string(bs.id) + " not contiguous");
    if (!nonneg_finite(bs.storage_cap) || !nonneg_finite(bs.compute_cap) || !nonneg_finite(bs.uplink_cap) ||
        !nonneg_finite(bs.downlink_cap))
      add("station " + std::to_string(n) + ": capacity negative or not finite");
  }
  for (std::size_t u = 0; u < instance.users.size(); ++u) {
    const auto& user = instance.users[u];
    const std::string who = "user " + std::to_string(u);
    if (user.id != static_cast<int>(u)) add(who + ": id " + std::to_string(user.id) + " not contiguous");
    if (user.service < 0 || user.service >= n_services) add(who + ": service id out of range");
    std::vector<int> seen;
    for (int n : user.coverage) {
      if (n < 0 || n >= n_stations) {
        add(who + ": BS id out of range (" + std::to_string(n) + ")");
        continue;
      }
      if (std::find(seen.begin(), seen.end(), n) != seen.end()) add(who + ": duplicate BS id in coverage");
      seen.push_back(n);
    }
  }

  const bool has_prev = instance.previous_placement.has_value();
  const bool has_budget = instance.adaptation_budget.has_value();
  if (has_prev != has_budget) add("previous placement and adaptation budget must be given together");
  if (has_budget && !(*instance.adaptation_budget >= 0.0))
    add("adaptation budget must be nonnegative");
  if (has_prev) {
    const auto& xp = *instance.previous_placement;
    if (xp.rows() != instance.num_stations() || xp.cols() != instance.num_services()) {
      add("previous placement has wrong dimensions");
    } else if (std::any_of(xp.data().begin(), xp.data().end(), [](std::uint8_t v) { return v > 1; })) {
      add("previous placement must be 0/1");
    }
  }
  return report;
}

void require_valid(const Instance& instance) {
  auto report = validate_instance(instance);
  if (report.ok()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : report.violations) msg += "\n  " + v;
  throw ValidationError(msg);
}

ViolationFactor violation_factor(double load, double capacity) {
  if (capacity > 0.0) return load / capacity;
  if (load <= kFeasibilityTol) return 0.0;
  return std::nullopt;
}

double adaptation_cost(const Instance& instance, const Placement& placement) {
  double spend = 0.0;
  const auto& xp = *instance.previous_placement;
  for (std::size_t n = 0; n < placement.rows(); ++n)
    for (std::size_t s = 0; s < placement.cols(); ++s)
      if (placement(n, s) && !xp(n, s)) spend += instance.services[s].storage;
  return spend;
}

LoadReport evaluate_solution(const Instance& instance, const IntegerSolution& sol) {
  const std::size_t n_stations = instance.num_stations();
  const std::size_t n_services = instance.num_services();
  if (sol.placement.rows() != n_stations || sol.placement.cols() != n_services)
    throw SolutionError("placement dimensions do not match instance");
  if (sol.routing.size() != instance.num_users()) throw SolutionError("routing size does not match user count");

  LoadReport report;
  report.loads.assign(n_stations, ResourceVector{});
  for (std::size_t n = 0; n < n_stations; ++n)
    for (std::size_t s = 0; s < n_services; ++s)
      if (sol.placement(n, s)) report.loads[n][0] += instance.services[s].storage;

  for (std::size_t u = 0; u < instance.num_users(); ++u) {
    const auto& user = instance.users[u];
    const int dest = sol.routing[u];
    if (dest == kCloud) {
      ++report.cloud_load;
      continue;
    }
    if (std::find(user.coverage.begin(), user.coverage.end(), dest) == user.coverage.end())
      throw SolutionError("user " + std::to_string(u) + " routed to BS " + std::to_string(dest) +
                          " outside its coverage");
    if (!sol.placement(dest, user.service))
      throw SolutionError("user " + std::to_string(u) + " routed to BS " + std::to_string(dest) +
                          " which does not hold service " + std::to_string(user.service));
    const auto& svc = instance.services[user.service];
    report.loads[dest][1] += svc.compute;
    report.loads[dest][2] += svc.uplink;
    report.loads[dest][3] += svc.downlink;
    ++report.edge_served;
  }

  report.violation_factors.resize(n_stations);
  for (std::size_t n = 0; n < n_stations; ++n) {
    for (std::size_t r = 0; r < kNumResources; ++r) {
      const double cap = instance.stations[n].capacity(static_cast<Resource>(r));
      const double load = report.loads[n][r];
      report.violation_factors[n][r] = violation_factor(load, cap);
      if (load > cap + kFeasibilityTol) report.feasible = false;
    }
  }
  if (instance.has_adaptation()) {
    report.adaptation_spend = adaptation_cost(instance, sol.placement);
    if (*report.adaptation_spend > *instance.adaptation_budget + kFeasibilityTol) report.feasible = false;
  }
  return report;
}

std::string Violation::describe() const {
  static constexpr const char* names[] = {"storage", "compute", "uplink", "downlink", "adaptation"};
  std::ostringstream os;
  os << names[static_cast<int>(kind)];
  if (station >= 0) os << " at BS " << station;
  os << ": load " << load << " > capacity " << capacity;
  if (factor) os << " (factor " << *factor << ")";
  else os << " (positive load on zero capacity)";
  return os.str();
}

std::vector<Violation> check_feasibility(const Instance& instance, const IntegerSolution& sol) {
  const auto report = evaluate_solution(instance, sol);
  std::vector<Violation> out;
  for (std::size_t n = 0; n < report.loads.size(); ++n) {
    for (std::size_t r = 0; r < kNumResources; ++r) {
      const double cap = instance.stations[n].capacity(static_cast<Resource>(r));
      if (report.loads[n][r] > cap + kFeasibilityTol)
        out.push_back({static_cast<Violation::Kind>(r), static_cast<int>(n), report.loads[n][r], cap,
                       report.violation_factors[n][r]});
    }
  }
  if (report.adaptation_spend && *report.adaptation_spend > *instance.adaptation_budget + kFeasibilityTol) {
    const double d = *instance.adaptation_budget;
    out.push_back({Violation::Kind::Adaptation, -1, *report.adaptation_spend, d,
                   violation_factor(*report.adaptation_spend, d)});
  }
  return out;
}

IntegerSolution all_cloud_solution(const Instance& instance) {
  return {Placement(instance.num_stations(), instance.num_services(), 0),
          std::vector<int>(instance.num_users(), kCloud)};
}

}  // namespace jsprr
