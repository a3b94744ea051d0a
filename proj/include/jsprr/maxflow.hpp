#pragma once

// Dinic's maximum flow on integer capacities.

#include <cstdint>
#include <vector>

namespace jsprr {

class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  /// Directed edge; returns its index for flow queries.
  int add_edge(int from, int to, std::int64_t capacity);
  std::int64_t solve(int source, int sink);
  std::int64_t flow_on(int edge) const;

 private:
  struct Edge {
    int to;
    std::int64_t cap;
  };
  bool build_levels(int source, int sink);
  std::int64_t push(int node, int sink, std::int64_t limit);

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<std::int64_t> original_;
};

}  // namespace jsprr
