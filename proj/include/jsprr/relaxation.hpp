#pragma once

// Linear relaxation of the placement/routing program:
//
//   min  sum_u y_lu
//   s.t. sum_{n in N_u + cloud} y_nu = 1          (one row per user)
//        y_nu - x_{n,s_u} <= 0                    (one row per user and covering BS)
//        sum_s x_ns r_s <= R_n                    (storage, per BS)
//        sum_u y_nu c_{s_u} <= C_n                (compute, per BS)
//        sum_u y_nu bu_{s_u} <= Bu_n              (uplink, per BS)
//        sum_u y_nu bd_{s_u} <= Bd_n              (downlink, per BS)
//        sum_ns x_ns (1 - xp_ns) r_s <= D         (optional adaptation budget)
//        0 <= x, y <= 1
//
// Routing variables exist only for covering stations and the cloud.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsprr/model.hpp"
#include "jsprr/simplex.hpp"

namespace jsprr {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LpProblem {
  Instance instance;
  bool includes_adaptation = false;
  lp::LinearProgram program;
  std::vector<double> upper_bounds;           // per column
  std::vector<std::size_t> routing_offset;    // first y column of each user; cloud column is last of the block
  std::vector<std::string> column_names;
  std::vector<std::string> row_names;

  std::size_t num_columns() const { return program.num_columns(); }
  std::size_t num_rows() const { return program.rows.size(); }
  std::size_t num_placement_columns() const { return instance.num_stations() * instance.num_services(); }
  std::size_t num_routing_columns() const { return num_columns() - num_placement_columns(); }

  std::size_t placement_column(std::size_t station, std::size_t service) const {
    return station * instance.num_services() + service;
  }
  /// Column of y for the k-th covering station of user u.
  std::size_t routing_column(std::size_t user, std::size_t k) const { return routing_offset[user] + k; }
  std::size_t cloud_column(std::size_t user) const {
    return routing_offset[user] + instance.users[user].coverage.size();
  }
};

struct FractionalSolution {
  Matrix<double> placement;                  // x-dagger, N x S in [0,1]
  std::vector<std::vector<double>> routing;  // y-dagger per user, aligned with its coverage list
  std::vector<double> cloud;                 // y-dagger to the cloud, per user
  double objective = 0.0;                    // xi-dagger
  std::vector<ResourceVector> loads;         // fractional per-BS loads
  double min_compute_load = 0.0;             // lambda-dagger
  double min_uplink_load = 0.0;              // mu-dagger
  double min_downlink_load = 0.0;            // nu-dagger
  long iterations = 0;
};

struct LpStats {
  double objective = 0.0;  // xi-dagger
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
};

/// Throws ValidationError for invalid instances or when adaptation is
/// requested without a previous placement and finite budget.
LpProblem build_lp(const Instance& instance, bool include_adaptation = false);

/// Optimal fractional solution; throws SolverError if the simplex does not
/// reach optimality (the program is always feasible and bounded).
FractionalSolution solve_lp(const LpProblem& problem, const lp::SimplexOptions& options = {});

/// Convenience: build (with adaptation when the instance carries it) and solve.
FractionalSolution solve_relaxation(const Instance& instance, const lp::SimplexOptions& options = {});

LpStats lp_stats(const FractionalSolution& frac);

/// CPLEX LP text format (objective, constraints, bounds).
void write_lp(const LpProblem& problem, std::ostream& out);
void write_lp(const LpProblem& problem, const std::filesystem::path& path);

}  // namespace jsprr
