#pragma once

// Domain types for joint service placement and request routing (JSPRR)
// instances, plus exact evaluation of integer solutions.
//
// Units: storage in GB, compute in GHz, uplink/downlink bandwidth in Mbps.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jsprr {

/// Absolute slack used by every capacity comparison (absorbs LP round-off).
inline constexpr double kFeasibilityTol = 1e-9;

/// Routing destination meaning "served by the centralized cloud".
inline constexpr int kCloud = -1;

enum class Resource : std::uint8_t { Storage = 0, Compute = 1, Uplink = 2, Downlink = 3 };
inline constexpr std::size_t kNumResources = 4;

const char* to_string(Resource r);

/// Four-vector indexed by Resource.
using ResourceVector = std::array<double, kNumResources>;

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct ServiceSpec {
  int id = 0;
  double storage = 0.0;   // r_s, GB
  double compute = 0.0;   // c_s, GHz per request
  double uplink = 0.0;    // Mbps per request
  double downlink = 0.0;  // Mbps per request

  /// Per-request load on a routing resource (Compute/Uplink/Downlink).
  double request_load(Resource r) const;
};

struct BaseStation {
  int id = 0;
  double storage_cap = 0.0;
  double compute_cap = 0.0;
  double uplink_cap = 0.0;
  double downlink_cap = 0.0;
  std::optional<Position> position;

  double capacity(Resource r) const;
};

struct User {
  int id = 0;
  std::vector<int> coverage;  // N_u, station ids; may be empty
  int service = 0;            // s_u
  std::optional<Position> position;
};

/// Row-major dense matrix with value semantics.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Binary N x S placement matrix, x_ns.
using Placement = Matrix<std::uint8_t>;

struct Instance {
  std::vector<ServiceSpec> services;
  std::vector<BaseStation> stations;
  std::vector<User> users;
  std::optional<Placement> previous_placement;  // x^p
  std::optional<double> adaptation_budget;      // D, GB

  std::size_t num_services() const { return services.size(); }
  std::size_t num_stations() const { return stations.size(); }
  std::size_t num_users() const { return users.size(); }

  bool has_adaptation() const { return previous_placement.has_value() && adaptation_budget.has_value(); }

  /// True when every requirement equals 1 (the homogeneous special case).
  bool is_unit() const;

  friend bool operator==(const Instance&, const Instance&);
};

struct IntegerSolution {
  Placement placement;       // x-hat
  std::vector<int> routing;  // per user: station id or kCloud

  friend bool operator==(const IntegerSolution&, const IntegerSolution&) = default;
};

/// Optional factor: nullopt marks positive load on a zero capacity.
using ViolationFactor = std::optional<double>;

struct LoadReport {
  int cloud_load = 0;
  int edge_served = 0;                // cloud_load + edge_served == U
  std::vector<ResourceVector> loads;  // per station
  std::vector<std::array<ViolationFactor, kNumResources>> violation_factors;
  std::optional<double> adaptation_spend;
  bool feasible = true;
};

struct Violation {
  enum class Kind : std::uint8_t { Storage, Compute, Uplink, Downlink, Adaptation };
  Kind kind = Kind::Storage;
  int station = -1;  // -1 for the network-wide adaptation budget
  double load = 0.0;
  double capacity = 0.0;
  ViolationFactor factor;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Thrown when a solution is structurally malformed for its instance.
class SolutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an instance fails validation where a valid one is required.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ValidationReport validate_instance(const Instance& instance);

/// Throws ValidationError listing every violation when the instance is invalid.
void require_valid(const Instance& instance);

/// Exact per-station loads, cloud load, adaptation spend and feasibility.
/// Throws SolutionError on dimension mismatch, routing outside the coverage
/// set, or routing to a station that does not hold the requested service.
LoadReport evaluate_solution(const Instance& instance, const IntegerSolution& sol);

/// Every violated capacity (and adaptation) constraint; empty iff feasible.
std::vector<Violation> check_feasibility(const Instance& instance, const IntegerSolution& sol);

/// Placement with nothing stored and every user routed to the cloud.
IntegerSolution all_cloud_solution(const Instance& instance);

/// Adaptation cost sum_{n,s} x_ns (1 - x^p_ns) r_s of a placement.
double adaptation_cost(const Instance& instance, const Placement& placement);

/// Ratio load/capacity, 0 for 0/0, nullopt for positive load on zero capacity.
ViolationFactor violation_factor(double load, double capacity);

}  // namespace jsprr
