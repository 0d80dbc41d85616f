#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "glupoly/errors.hpp"
#include "glupoly/gluing.hpp"
#include "glupoly/multigraph.hpp"

namespace glupoly {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

inline constexpr long long kDefaultVertexBudget = 1'000'000;

/// One recursion step: m copies of g plus all connecting graphs, glued by
/// identifying each edge's same-labeled marks with their attach images.
/// New marks sit at the roots of the phi-designated connectors.
inline MarkedGraph apply(const GluingData& d, const MarkedGraph& g) {
  require_valid(d);
  if (g.k() != d.k)
    throw ValidationError("mark count " + std::to_string(g.k()) +
                          " does not match gluing parameter k=" + std::to_string(d.k));

  const int nv = g.graph.vertex_count();
  // layout of the disjoint union: m copies, then the connecting graphs
  std::vector<int> copy_off(d.m);
  for (int i = 0; i < d.m; ++i) copy_off[i] = i * nv;
  int total = d.m * nv;
  std::map<std::string, int> conn_off;
  for (const auto& e : d.edges) {
    conn_off[e.id] = total;
    total += d.connecting.at(e.id).sigma.vertex_count();
  }

  detail::UnionFind uf(total);
  for (const auto& e : d.edges) {
    const auto& at = d.attach.at(e.id);
    for (int i : e.members) {
      int mark = copy_off[i - 1] + g.marks[e.label - 1];
      uf.unite(mark, conn_off[e.id] + at.at(i));
    }
  }

  // compress representatives in sorted order for deterministic output
  std::vector<int> rep(total);
  for (int v = 0; v < total; ++v) rep[v] = uf.find(v);
  std::vector<int> id(total, -1);
  int next_id = 0;
  for (int v = 0; v < total; ++v)
    if (rep[v] == v) id[v] = next_id++;
  auto final_id = [&](int v) { return id[rep[v]]; };

  MultiGraph out(next_id);
  for (int i = 0; i < d.m; ++i)
    for (auto [a, b] : g.graph.edges())
      out.add_edge(final_id(copy_off[i] + a), final_id(copy_off[i] + b));
  for (const auto& e : d.edges)
    for (auto [a, b] : d.connecting.at(e.id).sigma.edges())
      out.add_edge(final_id(conn_off[e.id] + a), final_id(conn_off[e.id] + b));

  std::vector<int> marks;
  for (int j = 1; j <= d.k; ++j) {
    const std::string& eid = d.phi.at(j);
    marks.push_back(final_id(conn_off[eid] + d.connecting.at(eid).root));
  }
  for (std::size_t a = 0; a < marks.size(); ++a)
    for (std::size_t b = a + 1; b < marks.size(); ++b)
      if (marks[a] == marks[b])
        throw ValidationError("phi roots collide under identification: labels " +
                              std::to_string(a + 1) + " and " + std::to_string(b + 1));
  return MarkedGraph(std::move(out), std::move(marks));
}

/// n-fold application; n=0 returns g0 unchanged.
inline MarkedGraph iterate(const GluingData& d, const MarkedGraph& g0, int n,
                           long long vertex_budget = kDefaultVertexBudget) {
  require_valid(d);
  // projected size ignores connector savings; refuse early on obvious blowups
  double projected = static_cast<double>(g0.graph.vertex_count());
  for (int s = 0; s < n; ++s) projected *= d.m;
  if (projected > static_cast<double>(vertex_budget) * 2)
    throw BudgetError("vertex budget exceeded: projected size m^n*|V(G0)| = " +
                      std::to_string(static_cast<long long>(projected)));
  MarkedGraph g = g0;
  for (int s = 0; s < n; ++s) {
    long long upper = static_cast<long long>(d.m) * g.graph.vertex_count();
    for (const auto& [id, cg] : d.connecting) upper += cg.sigma.vertex_count();
    if (upper > vertex_budget)
      throw BudgetError("vertex budget exceeded at level " + std::to_string(s + 1) +
                        ": projected " + std::to_string(upper) + " vertices");
    g = apply(d, g);
  }
  return g;
}

/// Pairwise graph distances between the marks of G_n built with the
/// simplified data (singleton connectors); -1 encodes infinity.
inline std::vector<std::vector<int>> separation_distances(
    const GluingData& d, const MarkedGraph& g0, int n,
    long long vertex_budget = kDefaultVertexBudget) {
  MarkedGraph g = iterate(simplify(d), g0, n, vertex_budget);
  std::vector<std::vector<int>> dist(g.k(), std::vector<int>(g.k(), 0));
  for (int a = 0; a < g.k(); ++a) {
    auto from = g.graph.distances_from(g.marks[a]);
    for (int b = 0; b < g.k(); ++b) dist[a][b] = from[g.marks[b]];
  }
  return dist;
}

}  // namespace glupoly
