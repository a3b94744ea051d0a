#include "jsprr/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

namespace jsprr {

LpProblem build_lp(const Instance& instance, bool include_adaptation) {
  require_valid(instance);
  if (include_adaptation) {
    if (!instance.has_adaptation())
      throw ValidationError("adaptation constraint requires a previous placement and a budget D");
    if (!std::isfinite(*instance.adaptation_budget))
      throw ValidationError("adaptation budget must be finite to form a constraint");
  }

  LpProblem p;
  p.instance = instance;
  p.includes_adaptation = include_adaptation;
  const std::size_t n_stations = instance.num_stations();
  const std::size_t n_services = instance.num_services();
  const std::size_t n_users = instance.num_users();

  auto& cost = p.program.cost;
  for (std::size_t n = 0; n < n_stations; ++n)
    for (std::size_t s = 0; s < n_services; ++s) {
      cost.push_back(0.0);
      p.column_names.push_back("x_" + std::to_string(n) + "_" + std::to_string(s));
    }
  for (std::size_t u = 0; u < n_users; ++u) {
    p.routing_offset.push_back(cost.size());
    for (int n : instance.users[u].coverage) {
      cost.push_back(0.0);
      p.column_names.push_back("y_" + std::to_string(n) + "_" + std::to_string(u));
    }
    cost.push_back(1.0);
    p.column_names.push_back("yl_" + std::to_string(u));
  }
  p.upper_bounds.assign(cost.size(), 1.0);

  auto& rows = p.program.rows;
  for (std::size_t u = 0; u < n_users; ++u) {
    lp::Row row{{}, lp::Sense::Equal, 1.0};
    const std::size_t k_max = instance.users[u].coverage.size();
    for (std::size_t k = 0; k <= k_max; ++k) row.terms.push_back({static_cast<int>(p.routing_offset[u] + k), 1.0});
    rows.push_back(std::move(row));
    p.row_names.push_back("route_" + std::to_string(u));
  }
  for (std::size_t u = 0; u < n_users; ++u) {
    const auto& user = instance.users[u];
    for (std::size_t k = 0; k < user.coverage.size(); ++k) {
      const auto n = static_cast<std::size_t>(user.coverage[k]);
      rows.push_back({{{static_cast<int>(p.routing_column(u, k)), 1.0},
                       {static_cast<int>(p.placement_column(n, user.service)), -1.0}},
                      lp::Sense::LessEqual,
                      0.0});
      p.row_names.push_back("link_" + std::to_string(n) + "_" + std::to_string(u));
    }
  }
  for (std::size_t n = 0; n < n_stations; ++n) {
    const auto& bs = instance.stations[n];
    lp::Row storage{{}, lp::Sense::LessEqual, bs.storage_cap};
    for (std::size_t s = 0; s < n_services; ++s)
      if (instance.services[s].storage != 0.0)
        storage.terms.push_back({static_cast<int>(p.placement_column(n, s)), instance.services[s].storage});
    rows.push_back(std::move(storage));
    p.row_names.push_back("storage_" + std::to_string(n));

    for (Resource r : {Resource::Compute, Resource::Uplink, Resource::Downlink}) {
      lp::Row cap{{}, lp::Sense::LessEqual, bs.capacity(r)};
      for (std::size_t u = 0; u < n_users; ++u) {
        const auto& user = instance.users[u];
        const double req = instance.services[user.service].request_load(r);
        if (req == 0.0) continue;
        for (std::size_t k = 0; k < user.coverage.size(); ++k)
          if (static_cast<std::size_t>(user.coverage[k]) == n)
            cap.terms.push_back({static_cast<int>(p.routing_column(u, k)), req});
      }
      rows.push_back(std::move(cap));
      p.row_names.push_back(std::string(to_string(r)) + "_" + std::to_string(n));
    }
  }
  if (include_adaptation) {
    lp::Row adapt{{}, lp::Sense::LessEqual, *instance.adaptation_budget};
    const auto& xp = *instance.previous_placement;
    for (std::size_t n = 0; n < n_stations; ++n)
      for (std::size_t s = 0; s < n_services; ++s)
        if (!xp(n, s) && instance.services[s].storage != 0.0)
          adapt.terms.push_back({static_cast<int>(p.placement_column(n, s)), instance.services[s].storage});
    rows.push_back(std::move(adapt));
    p.row_names.push_back("adaptation");
  }
  return p;
}

FractionalSolution solve_lp(const LpProblem& problem, const lp::SimplexOptions& options) {
  // No upper-bound rows; x and y are clipped to [0, 1] afterwards.
  const auto result = lp::solve_simplex(problem.program, options);
  if (result.status != lp::Status::Optimal)
    throw SolverError(std::string("LP relaxation not solved: ") + lp::to_string(result.status) + " after " +
                      std::to_string(result.iterations) + " iterations");

  const Instance& inst = problem.instance;
  const std::size_t n_stations = inst.num_stations();
  const std::size_t n_services = inst.num_services();
  auto clip = [](double v) { return std::clamp(v, 0.0, 1.0); };

  FractionalSolution frac;
  frac.iterations = result.iterations;
  frac.placement = Matrix<double>(n_stations, n_services, 0.0);
  for (std::size_t n = 0; n < n_stations; ++n)
    for (std::size_t s = 0; s < n_services; ++s)
      frac.placement(n, s) = clip(result.values[problem.placement_column(n, s)]);

  frac.loads.assign(n_stations, ResourceVector{});
  for (std::size_t n = 0; n < n_stations; ++n)
    for (std::size_t s = 0; s < n_services; ++s)
      frac.loads[n][0] += frac.placement(n, s) * inst.services[s].storage;

  frac.routing.resize(inst.num_users());
  frac.cloud.resize(inst.num_users());
  double objective = 0.0;
  for (std::size_t u = 0; u < inst.num_users(); ++u) {
    const auto& user = inst.users[u];
    const auto& svc = inst.services[user.service];
    auto& y = frac.routing[u];
    y.resize(user.coverage.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
      y[k] = clip(result.values[problem.routing_column(u, k)]);
      const auto n = static_cast<std::size_t>(user.coverage[k]);
      frac.loads[n][1] += y[k] * svc.compute;
      frac.loads[n][2] += y[k] * svc.uplink;
      frac.loads[n][3] += y[k] * svc.downlink;
    }
    frac.cloud[u] = clip(result.values[problem.cloud_column(u)]);
    objective += frac.cloud[u];
  }
  frac.objective = objective;

  if (n_stations > 0) {
    frac.min_compute_load = frac.min_uplink_load = frac.min_downlink_load = std::numeric_limits<double>::infinity();
    for (const auto& l : frac.loads) {
      frac.min_compute_load = std::min(frac.min_compute_load, l[1]);
      frac.min_uplink_load = std::min(frac.min_uplink_load, l[2]);
      frac.min_downlink_load = std::min(frac.min_downlink_load, l[3]);
    }
  }
  return frac;
}

FractionalSolution solve_relaxation(const Instance& instance, const lp::SimplexOptions& options) {
  const bool adapt = instance.has_adaptation() && std::isfinite(*instance.adaptation_budget);
  return solve_lp(build_lp(instance, adapt), options);
}

LpStats lp_stats(const FractionalSolution& frac) {
  return {frac.objective, frac.min_compute_load, frac.min_uplink_load, frac.min_downlink_load};
}

namespace {

void write_terms(std::ostream& out, const std::vector<lp::Term>& terms, const std::vector<std::string>& names) {
  if (terms.empty()) {
    out << " 0 " << names.front();
    return;
  }
  bool first = true;
  for (const auto& t : terms) {
    const double mag = std::fabs(t.coef);
    out << (t.coef < 0 ? " - " : (first ? " " : " + "));
    if (mag != 1.0) out << mag << ' ';
    out << names[t.column];
    first = false;
  }
}

}  // namespace

void write_lp(const LpProblem& problem, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "\\ JSPRR linear relaxation: " << problem.instance.num_stations() << " stations, "
      << problem.instance.num_services() << " services, " << problem.instance.num_users() << " users\n";
  out << "Minimize\n obj:";
  std::vector<lp::Term> objective;
  for (std::size_t j = 0; j < problem.num_columns(); ++j)
    if (problem.program.cost[j] != 0.0) objective.push_back({static_cast<int>(j), problem.program.cost[j]});
  write_terms(out, objective, problem.column_names);
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < problem.num_rows(); ++r) {
    const auto& row = problem.program.rows[r];
    out << ' ' << problem.row_names[r] << ':';
    write_terms(out, row.terms, problem.column_names);
    switch (row.sense) {
      case lp::Sense::LessEqual: out << " <= "; break;
      case lp::Sense::Equal: out << " = "; break;
      case lp::Sense::GreaterEqual: out << " >= "; break;
    }
    out << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < problem.num_columns(); ++j)
    out << " 0 <= " << problem.column_names[j] << " <= " << problem.upper_bounds[j] << '\n';
  out << "End\n";
  out.precision(old_precision);
}

void write_lp(const LpProblem& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_lp(problem, out);
}

}  // namespace jsprr
