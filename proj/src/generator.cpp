#include "jsprr/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jsprr {

namespace {

int exact_sqrt(int n) {
  int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return k * k == n ? k : -1;
}

void check_range(const Range& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo < 0.0 || r.lo > r.hi)
    throw GeneratorError(std::string(name) + " range must satisfy 0 <= lo <= hi");
}

}  // namespace

void validate_config(const GeneratorConfig& c) {
  if (c.n_stations <= 0 || exact_sqrt(c.n_stations) < 0)
    throw GeneratorError("n_stations must be a positive perfect square (grid layout), got " +
                         std::to_string(c.n_stations));
  if (c.n_users < 0) throw GeneratorError("n_users must be nonnegative");
  if (c.n_services <= 0) throw GeneratorError("n_services must be positive");
  if (!(c.area_side > 0.0)) throw GeneratorError("area_side must be positive");
  if (!(c.coverage_radius > 0.0)) throw GeneratorError("coverage_radius must be positive");
  if (!(c.zipf_shape > 0.0) || !std::isfinite(c.zipf_shape)) throw GeneratorError("zipf_shape must be positive");
  for (double cap : {c.storage_cap, c.compute_cap, c.uplink_cap, c.downlink_cap})
    if (!std::isfinite(cap) || cap < 0.0) throw GeneratorError("capacities must be finite and nonnegative");
  check_range(c.storage_req, "storage_req");
  check_range(c.compute_req, "compute_req");
  check_range(c.uplink_req, "uplink_req");
  check_range(c.downlink_req, "downlink_req");
  if (c.max_placement_attempts <= 0) throw GeneratorError("max_placement_attempts must be positive");
}

std::vector<double> zipf_pmf(double shape, int count) {
  std::vector<double> p(static_cast<std::size_t>(std::max(count, 0)));
  double total = 0.0;
  for (int k = 1; k <= count; ++k) {
    p[k - 1] = std::pow(static_cast<double>(k), -shape);
    total += p[k - 1];
  }
  for (double& v : p) v /= total;
  return p;
}

ZipfSampler::ZipfSampler(double shape, int count) : pmf_(zipf_pmf(shape, count)), cdf_(pmf_.size()) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    acc += pmf_[i];
    cdf_[i] = acc;
  }
  if (!cdf_.empty()) cdf_.back() = 1.0;
}

int ZipfSampler::operator()(Rng& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<int>(it - cdf_.begin());
}

std::vector<Position> grid_positions(int n_stations, double area_side) {
  const int k = exact_sqrt(n_stations);
  if (k < 0) throw GeneratorError("n_stations must be a perfect square");
  std::vector<Position> out;
  const double cell = area_side / k;
  for (int row = 0; row < k; ++row)
    for (int col = 0; col < k; ++col) out.push_back({(col + 0.5) * cell, (row + 0.5) * cell});
  return out;
}

Instance generate_instance(const GeneratorConfig& config) {
  validate_config(config);
  Instance inst;
  const auto sites = grid_positions(config.n_stations, config.area_side);
  for (int n = 0; n < config.n_stations; ++n)
    inst.stations.push_back({n, config.storage_cap, config.compute_cap, config.uplink_cap, config.downlink_cap,
                             sites[n]});

  for (int s = 0; s < config.n_services; ++s) {
    Rng rng(config.seed, "service", static_cast<std::uint64_t>(s));
    ServiceSpec svc;
    svc.id = s;
    svc.storage = rng.uniform(config.storage_req.lo, config.storage_req.hi);
    svc.compute = rng.uniform(config.compute_req.lo, config.compute_req.hi);
    svc.uplink = rng.uniform(config.uplink_req.lo, config.uplink_req.hi);
    svc.downlink = rng.uniform(config.downlink_req.lo, config.downlink_req.hi);
    inst.services.push_back(svc);
  }

  const ZipfSampler popularity(config.zipf_shape, config.n_services);
  const double r2 = config.coverage_radius * config.coverage_radius;
  for (int u = 0; u < config.n_users; ++u) {
    Rng rng(config.seed, "user", static_cast<std::uint64_t>(u));
    User user;
    user.id = u;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= config.max_placement_attempts)
        throw GeneratorError("could not place user " + std::to_string(u) + " inside coverage after " +
                             std::to_string(config.max_placement_attempts) + " attempts");
      const Position p{rng.uniform(0.0, config.area_side), rng.uniform(0.0, config.area_side)};
      user.coverage.clear();
      for (int n = 0; n < config.n_stations; ++n) {
        const double dx = p.x - sites[n].x;
        const double dy = p.y - sites[n].y;
        if (dx * dx + dy * dy <= r2) user.coverage.push_back(n);
      }
      if (!user.coverage.empty()) {
        user.position = p;
        break;
      }
    }
    user.service = popularity(rng);
    inst.users.push_back(std::move(user));
  }
  return inst;
}

}  // namespace jsprr
