#include "jsprr/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace jsprr {

MaxFlow::MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

int MaxFlow::add_edge(int from, int to, std::int64_t capacity) {
  if (capacity < 0) throw std::invalid_argument("negative edge capacity");
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity});
  edges_.push_back({from, 0});
  original_.push_back(capacity);
  original_.push_back(0);
  adj_[static_cast<std::size_t>(from)].push_back(id);
  adj_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels(int source, int sink) {
  level_.assign(adj_.size(), -1);
  std::queue<int> q;
  level_[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int e : adj_[static_cast<std::size_t>(v)]) {
      const auto& edge = edges_[static_cast<std::size_t>(e)];
      if (edge.cap > 0 && level_[static_cast<std::size_t>(edge.to)] < 0) {
        level_[static_cast<std::size_t>(edge.to)] = level_[static_cast<std::size_t>(v)] + 1;
        q.push(edge.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(sink)] >= 0;
}

std::int64_t MaxFlow::push(int node, int sink, std::int64_t limit) {
  if (node == sink) return limit;
  const auto v = static_cast<std::size_t>(node);
  for (auto& i = cursor_[v]; i < adj_[v].size(); ++i) {
    const int e = adj_[v][i];
    auto& edge = edges_[static_cast<std::size_t>(e)];
    if (edge.cap <= 0 || level_[static_cast<std::size_t>(edge.to)] != level_[v] + 1) continue;
    const std::int64_t got = push(edge.to, sink, std::min(limit, edge.cap));
    if (got > 0) {
      edge.cap -= got;
      edges_[static_cast<std::size_t>(e ^ 1)].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::solve(int source, int sink) {
  std::int64_t total = 0;
  while (build_levels(source, sink)) {
    cursor_.assign(adj_.size(), 0);
    while (const std::int64_t f = push(source, sink, std::numeric_limits<std::int64_t>::max())) total += f;
  }
  return total;
}

std::int64_t MaxFlow::flow_on(int edge) const {
  return original_[static_cast<std::size_t>(edge)] - edges_[static_cast<std::size_t>(edge)].cap;
}

}  // namespace jsprr
