#pragma once

#include <string>
#include <vector>

#include "glupoly/gluing.hpp"
#include "glupoly/recursion.hpp"

namespace glupoly {

struct CatalogEntry {
  GluingData data;
  MarkedGraph start;
};

inline std::vector<std::string> catalog_names() {
  return {"sierpinski", "hanoi",     "chebyshev",
          "chebyshev-tripod", "spod-star", "degenerate-demo"};
}

namespace detail {

inline ConnectingGraph singleton_connector() {
  return ConnectingGraph{MultiGraph(1), 0};
}

/// Triangle scheme shared by sierpinski and hanoi: m=k=3,
/// pair edges {1,2}:3 {2,3}:1 {1,3}:2 and singleton edges {j}:j,
/// phi(j) = the singleton at copy j.
inline GluingData triangle_scheme() {
  GluingData d;
  d.m = 3;
  d.k = 3;
  d.edges = {
      {"p12", {1, 2}, 3}, {"p23", {2, 3}, 1}, {"p13", {1, 3}, 2},
      {"s1", {1}, 1},     {"s2", {2}, 2},     {"s3", {3}, 3},
  };
  d.phi = {{1, "s1"}, {2, "s2"}, {3, "s3"}};
  return d;
}

}  // namespace detail

/// Built-in gluing data with its default starting graph.
inline CatalogEntry catalog(const std::string& name) {
  using detail::singleton_connector;
  if (name == "sierpinski" || name == "hanoi") {
    GluingData d = detail::triangle_scheme();
    for (const auto& e : d.edges) {
      if (name == "hanoi" && e.members.size() == 2) {
        // K2 connector, attach is a bijection onto its two vertices
        ConnectingGraph cg{MultiGraph(2), 0};
        cg.sigma.add_edge(0, 1);
        d.connecting[e.id] = cg;
        d.attach[e.id] = {{e.members[0], 0}, {e.members[1], 1}};
      } else {
        d.connecting[e.id] = singleton_connector();
        for (int i : e.members) d.attach[e.id][i] = 0;
      }
    }
    MarkedGraph start(MultiGraph::complete(3), {0, 1, 2});
    return {d, start};
  }
  if (name == "chebyshev" || name == "chebyshev-tripod") {
    GluingData d;
    d.m = 2;
    d.k = 2;
    d.edges = {{"s1", {1}, 1}, {"s2", {2}, 1}, {"pair", {1, 2}, 2}};
    d.phi = {{1, "s1"}, {2, "s2"}};
    for (const auto& e : d.edges) {
      d.connecting[e.id] = singleton_connector();
      for (int i : e.members) d.attach[e.id][i] = 0;
    }
    if (name == "chebyshev") {
      MarkedGraph start(MultiGraph::complete(2), {0, 1});
      return {d, start};
    }
    // chebyshev G_1 of the tripod K_{1,3} marked at two leaves:
    // the 7-vertex double tripod, which is maximally independent
    MarkedGraph tripod(MultiGraph::star(3), {1, 2});
    return {d, apply(d, tripod)};
  }
  if (name == "spod-star") {
    GluingData d;
    d.m = 3;
    d.k = 2;
    d.edges = {{"s1", {1}, 1}, {"s2", {2}, 1}, {"s3", {3}, 1}, {"pod", {1, 2, 3}, 2}};
    d.phi = {{1, "s1"}, {2, "s2"}};
    for (const auto& e : d.edges) {
      if (e.id == "pod") {
        // 3-pod rooted at its center; members attach to the leaves
        ConnectingGraph cg{MultiGraph::star(3), 0};
        d.connecting[e.id] = cg;
        d.attach[e.id] = {{1, 1}, {2, 2}, {3, 3}};
      } else {
        d.connecting[e.id] = singleton_connector();
        for (int i : e.members) d.attach[e.id][i] = 0;
      }
    }
    MarkedGraph start(MultiGraph::complete(2), {0, 1});
    return {d, start};
  }
  if (name == "degenerate-demo") {
    // phi(1) is a periodic critical label: Lambda(1)=1 with #phi(1)=2
    GluingData d;
    d.m = 2;
    d.k = 2;
    d.edges = {{"pair", {1, 2}, 1}, {"s1", {1}, 2}, {"s2", {2}, 2}};
    d.phi = {{1, "pair"}, {2, "s1"}};
    for (const auto& e : d.edges) {
      d.connecting[e.id] = singleton_connector();
      for (int i : e.members) d.attach[e.id][i] = 0;
    }
    MarkedGraph start(MultiGraph::complete(2), {0, 1});
    return {d, start};
  }
  std::string known;
  for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("unknown catalog name '" + name + "' (known: " + known + ")");
}

}  // namespace glupoly
