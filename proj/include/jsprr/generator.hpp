#pragma once

// Synthetic instances for the multi-cell evaluation setup: a regular grid of
// base stations in a square area, users uniform over the union of coverage
// disks, Zipf service popularity and uniformly drawn requirements.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jsprr/model.hpp"
#include "jsprr/rng.hpp"

namespace jsprr {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorConfig {
  int n_stations = 9;
  int n_users = 500;
  int n_services = 100;
  double area_side = 500.0;        // m
  double coverage_radius = 150.0;  // m
  double zipf_shape = 0.8;

  double storage_cap = 500.0;    // GB
  double compute_cap = 10.0;     // GHz
  double uplink_cap = 75.0;      // Mbps
  double downlink_cap = 250.0;   // Mbps

  Range storage_req{20.0, 100.0};  // GB
  Range compute_req{0.1, 0.5};     // GHz
  Range uplink_req{1.0, 5.0};      // Mbps
  Range downlink_req{1.0, 20.0};   // Mbps

  std::uint64_t seed = 1;

  /// Rejection-sampling attempts allowed per user before giving up.
  int max_placement_attempts = 1'000'000;
};

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws GeneratorError describing the first invalid field.
void validate_config(const GeneratorConfig& config);

Instance generate_instance(const GeneratorConfig& config);

/// p_k = k^-shape / sum_j j^-shape for k = 1..count. shape 0 gives uniform.
std::vector<double> zipf_pmf(double shape, int count);

/// Inverse-CDF sampler over ranks 0..count-1 (rank 0 most popular).
class ZipfSampler {
 public:
  ZipfSampler(double shape, int count);
  int operator()(Rng& rng) const;
  const std::vector<double>& pmf() const { return pmf_; }

 private:
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

/// Station coordinates at the cell centers of a sqrt(N) x sqrt(N) grid.
std::vector<Position> grid_positions(int n_stations, double area_side);

}  // namespace jsprr
