#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "glupoly/errors.hpp"

namespace glupoly {

/// Finite multigraph: vertices 0..n-1, edge multiset of unordered pairs.
/// Parallel edges and loops are allowed and preserved.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int vertex_count) : n_(vertex_count) {
    if (vertex_count < 0) throw ValidationError("negative vertex count");
  }

  static MultiGraph complete(int n) {
    MultiGraph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
  }

  static MultiGraph path(int n) {
    MultiGraph g(n);
    for (int a = 0; a + 1 < n; ++a) g.add_edge(a, a + 1);
    return g;
  }

  /// Star K_{1,s}: vertex 0 is the center, 1..s the leaves.
  static MultiGraph star(int leaves) {
    MultiGraph g(leaves + 1);
    for (int a = 1; a <= leaves; ++a) g.add_edge(0, a);
    return g;
  }

  void add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_)
      throw ValidationError("edge endpoint out of range");
    if (a > b) std::swap(a, b);
    auto e = std::make_pair(a, b);
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
  }

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Neighbor bitmask per vertex; a loop marks the vertex itself.
  /// Parallel edges collapse to a single adjacency bit.
  std::vector<std::uint64_t> adjacency_masks() const {
    if (n_ > 63) throw BudgetError("adjacency masks limited to 63 vertices");
    std::vector<std::uint64_t> adj(n_, 0);
    for (auto [a, b] : edges_) {
      adj[a] |= std::uint64_t{1} << b;
      adj[b] |= std::uint64_t{1} << a;
    }
    return adj;
  }

  bool connected() const {
    if (n_ == 0) return false;
    std::vector<std::vector<int>> nbr(n_);
    for (auto [a, b] : edges_) {
      nbr[a].push_back(b);
      nbr[b].push_back(a);
    }
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : nbr[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
    }
    return reached == n_;
  }

  /// BFS distances from `src`; -1 where unreachable.
  std::vector<int> distances_from(int src) const {
    std::vector<std::vector<int>> nbr(n_);
    for (auto [a, b] : edges_) {
      nbr[a].push_back(b);
      nbr[b].push_back(a);
    }
    std::vector<int> dist(n_, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : nbr[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
    }
    return dist;
  }

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;  // normalized (a<=b), kept sorted
};

/// Graph plus k distinct marked vertices; marks[j] carries label j+1.
struct MarkedGraph {
  MultiGraph graph;
  std::vector<int> marks;

  MarkedGraph() = default;
  MarkedGraph(MultiGraph g, std::vector<int> mk)
      : graph(std::move(g)), marks(std::move(mk)) {
    if (marks.size() < 2) throw ValidationError("need at least 2 marks");
    std::vector<int> sorted = marks;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] < 0 || sorted[i] >= graph.vertex_count())
        throw ValidationError("mark out of range");
      if (i > 0 && sorted[i] == sorted[i - 1])
        throw ValidationError("marks must be distinct");
    }
  }

  int k() const { return static_cast<int>(marks.size()); }

  friend bool operator==(const MarkedGraph& a, const MarkedGraph& b) {
    return a.graph == b.graph && a.marks == b.marks;
  }
};

}  // namespace glupoly
