#pragma once

// Exact routing marginals of the rounding scheme on a fixed small instance,
// by enumerating every placement outcome of a user's covering stations.

#include <vector>

#include "jsprr/relaxation.hpp"
#include "support.hpp"

namespace marginals {

/// Two stations, six users, three services; the LP optimum is fractional.
inline jsprr::Instance fixture() {
  return support::make_instance({{1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 1}},
                                {{1.5, 2, 3, 3}, {1.5, 2.5, 3, 3}},
                                {{{0, 1}, 0}, {{0}, 0}, {{1}, 1}, {{0, 1}, 1}, {{1, 0}, 2}, {{1}, 2}});
}

/// Per user, probabilities aligned with coverage followed by the cloud.
/// Station weights y/x and the clamped cloud weight are normalized when they
/// exceed 1; any deficit goes to the cloud.
inline std::vector<std::vector<double>> expected_routing(const jsprr::Instance& inst,
                                                         const jsprr::FractionalSolution& f) {
  std::vector<std::vector<double>> out;
  for (std::size_t u = 0; u < inst.num_users(); ++u) {
    const auto& cov = inst.users[u].coverage;
    const int s = inst.users[u].service;
    const std::size_t k = cov.size();
    std::vector<double> p(k + 1, 0.0);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      double prob = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double x = f.placement(cov[i], s);
        prob *= (mask >> i & 1) ? x : 1.0 - x;
      }
      if (prob == 0.0) continue;
      if (mask == 0) {
        p[k] += prob;
        continue;
      }
      std::vector<double> w(k + 1, 0.0);
      double none = 1.0, total = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (!(mask >> i & 1)) continue;
        const double x = f.placement(cov[i], s);
        w[i] = f.routing[u][i] / x;
        none *= 1.0 - x;
        total += w[i];
      }
      w[k] = std::max(0.0, (f.cloud[u] - none) / (1.0 - none));
      total += w[k];
      for (std::size_t i = 0; i <= k; ++i) {
        double q = total > 1.0 ? w[i] / total : w[i];
        if (i == k && total < 1.0) q += 1.0 - total;
        p[i] += prob * q;
      }
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace marginals
