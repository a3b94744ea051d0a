#pragma once

// Test-side builders and independent reference computations. Nothing here
// calls into the library's solvers; the references enumerate directly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "jsprr/model.hpp"

namespace support {

using jsprr::Instance;

struct Svc {
  double r, c, bu, bd;
};
struct Bs {
  double R, C, Bu, Bd;
};
struct Usr {
  std::vector<int> coverage;
  int service;
};

inline Instance make_instance(const std::vector<Svc>& services, const std::vector<Bs>& stations,
                              const std::vector<Usr>& users) {
  Instance inst;
  for (std::size_t s = 0; s < services.size(); ++s)
    inst.services.push_back({static_cast<int>(s), services[s].r, services[s].c, services[s].bu, services[s].bd});
  for (std::size_t n = 0; n < stations.size(); ++n)
    inst.stations.push_back(
        {static_cast<int>(n), stations[n].R, stations[n].C, stations[n].Bu, stations[n].Bd, std::nullopt});
  for (std::size_t u = 0; u < users.size(); ++u)
    inst.users.push_back({static_cast<int>(u), users[u].coverage, users[u].service, std::nullopt});
  return inst;
}

/// Unit requirements everywhere.
inline Instance unit_instance(const std::vector<Bs>& stations, int services, const std::vector<Usr>& users) {
  return make_instance(std::vector<Svc>(services, {1, 1, 1, 1}), stations, users);
}

struct TinyOptions {
  bool unit = false;
  bool disjoint = false;  // every user covered by at most one station
  bool adaptation = false;
  int max_stations = 3;
  int max_services = 4;
  int max_users = 8;
};

inline Instance random_tiny(std::mt19937_64& gen, const TinyOptions& opt) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  auto half = [&](int lo, int hi) { return pick(2 * lo, 2 * hi) / 2.0; };
  const int N = pick(1, opt.max_stations);
  const int S = pick(1, opt.max_services);
  const int U = pick(1, opt.max_users);
  std::vector<Svc> services;
  for (int s = 0; s < S; ++s) {
    if (opt.unit) services.push_back({1, 1, 1, 1});
    else services.push_back({static_cast<double>(pick(1, 3)), half(1, 2), half(1, 2), half(1, 3)});
  }
  std::vector<Bs> stations;
  for (int n = 0; n < N; ++n) {
    if (opt.unit)
      stations.push_back({static_cast<double>(pick(0, S)), static_cast<double>(pick(0, 4)),
                          static_cast<double>(pick(0, 4)), static_cast<double>(pick(0, 4))});
    else
      stations.push_back({static_cast<double>(pick(0, 6)), half(0, 4), half(0, 4), half(0, 6)});
  }
  std::vector<Usr> users;
  for (int u = 0; u < U; ++u) {
    Usr user{{}, pick(0, S - 1)};
    if (opt.disjoint) {
      const int n = pick(-1, N - 1);
      if (n >= 0) user.coverage.push_back(n);
    } else {
      for (int n = 0; n < N; ++n)
        if (pick(0, 2) > 0) user.coverage.push_back(n);
      std::shuffle(user.coverage.begin(), user.coverage.end(), gen);
    }
    users.push_back(user);
  }
  Instance inst = make_instance(services, stations, users);
  if (opt.adaptation) {
    jsprr::Placement xp(N, S, 0);
    for (auto& v : xp.data()) v = pick(0, 3) == 0 ? 1 : 0;
    inst.previous_placement = xp;
    inst.adaptation_budget = static_cast<double>(pick(0, 5));
  }
  return inst;
}

struct Sums {
  int cloud = 0;
  std::vector<std::array<double, 4>> loads;
  double spend = 0.0;
};

/// Direct re-summation of every constraint left-hand side.
inline Sums resum(const Instance& inst, const jsprr::IntegerSolution& sol) {
  Sums out;
  out.loads.assign(inst.stations.size(), {0, 0, 0, 0});
  for (std::size_t n = 0; n < inst.stations.size(); ++n)
    for (std::size_t s = 0; s < inst.services.size(); ++s) {
      const double x = sol.placement(n, s);
      out.loads[n][0] += x * inst.services[s].storage;
      if (inst.previous_placement) out.spend += x * (1.0 - (*inst.previous_placement)(n, s)) * inst.services[s].storage;
    }
  for (std::size_t n = 0; n < inst.stations.size(); ++n)
    for (std::size_t u = 0; u < inst.users.size(); ++u) {
      const double y = sol.routing[u] == static_cast<int>(n) ? 1.0 : 0.0;
      const auto& svc = inst.services[inst.users[u].service];
      out.loads[n][1] += y * svc.compute;
      out.loads[n][2] += y * svc.uplink;
      out.loads[n][3] += y * svc.downlink;
    }
  for (int d : sol.routing) out.cloud += d == jsprr::kCloud ? 1 : 0;
  return out;
}

inline bool within(const Instance& inst, const std::vector<std::array<double, 4>>& loads) {
  for (std::size_t n = 0; n < inst.stations.size(); ++n) {
    const auto& b = inst.stations[n];
    const double caps[4] = {b.storage_cap, b.compute_cap, b.uplink_cap, b.downlink_cap};
    for (int r = 0; r < 4; ++r)
      if (loads[n][r] > caps[r] + 1e-9) return false;
  }
  return true;
}

/// Enumerates every routing (each user: a covering station or the cloud)
/// and stores exactly what the routing uses. Extra placements can only add
/// storage and adaptation spend, so this covers the optimum.
inline int reference_optimum(const Instance& inst) {
  const std::size_t U = inst.users.size();
  const std::size_t N = inst.stations.size();
  const std::size_t S = inst.services.size();
  std::vector<std::size_t> choice(U, 0);
  int best = static_cast<int>(U);
  for (;;) {
    jsprr::IntegerSolution sol{jsprr::Placement(N, S, 0), std::vector<int>(U, jsprr::kCloud)};
    for (std::size_t u = 0; u < U; ++u) {
      const auto& cov = inst.users[u].coverage;
      if (choice[u] < cov.size()) {
        sol.routing[u] = cov[choice[u]];
        sol.placement(cov[choice[u]], inst.users[u].service) = 1;
      }
    }
    const auto sums = resum(inst, sol);
    const bool budget_ok = !inst.adaptation_budget || sums.spend <= *inst.adaptation_budget + 1e-9;
    if (budget_ok && within(inst, sums.loads)) best = std::min(best, sums.cloud);

    std::size_t u = 0;
    for (; u < U; ++u) {
      if (++choice[u] <= inst.users[u].coverage.size()) break;
      choice[u] = 0;
    }
    if (u == U) break;
  }
  return best;
}

/// Most requests servable at stations for a fixed placement, by enumeration.
/// Storage is not checked.
inline int reference_served(const Instance& inst, const jsprr::Placement& placement) {
  const std::size_t U = inst.users.size();
  std::vector<std::vector<int>> options(U);
  for (std::size_t u = 0; u < U; ++u) {
    for (int n : inst.users[u].coverage)
      if (placement(n, inst.users[u].service)) options[u].push_back(n);
    options[u].push_back(jsprr::kCloud);
  }
  std::vector<std::size_t> choice(U, 0);
  int best = 0;
  for (;;) {
    jsprr::IntegerSolution sol{placement, std::vector<int>(U)};
    for (std::size_t u = 0; u < U; ++u) sol.routing[u] = options[u][choice[u]];
    auto sums = resum(inst, sol);
    for (auto& l : sums.loads) l[0] = 0.0;
    if (within(inst, sums.loads)) best = std::max(best, static_cast<int>(U) - sums.cloud);
    std::size_t u = 0;
    for (; u < U; ++u) {
      if (++choice[u] < options[u].size()) break;
      choice[u] = 0;
    }
    if (u == U) break;
  }
  return best;
}

}  // namespace support
