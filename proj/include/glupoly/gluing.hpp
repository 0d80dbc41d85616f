#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glupoly/errors.hpp"
#include "glupoly/multigraph.hpp"

namespace glupoly {

/// Hyperedge of the gluing scheme H: a labeled nonempty subset of the
/// copy slots {1..m}. Edges carry ids so equal (members, label) pairs can
/// coexist (E(H) is a multiset).
struct HyperEdge {
  std::string id;
  std::vector<int> members;  // 1-based copy indices, kept sorted
  int label = 0;             // in {1..k}
};

/// Connecting graph Sigma_e with its root vertex.
struct ConnectingGraph {
  MultiGraph sigma;
  int root = 0;
};

/// The quadruple (H, Sigma, Upsilon, Phi) with parameters m, k.
struct GluingData {
  int m = 0;
  int k = 0;
  std::vector<HyperEdge> edges;
  std::map<std::string, ConnectingGraph> connecting;
  std::map<std::string, std::map<int, int>> attach;  // edge id -> member -> vertex of Sigma
  std::map<int, std::string> phi;                    // label -> edge id

  const HyperEdge* edge_by_id(const std::string& id) const {
    for (const auto& e : edges)
      if (e.id == id) return &e;
    return nullptr;
  }
  const HyperEdge& phi_edge(int label) const {
    auto it = phi.find(label);
    if (it == phi.end()) throw ValidationError("phi undefined for label");
    const HyperEdge* e = edge_by_id(it->second);
    if (!e) throw ValidationError("phi maps to unknown edge");
    return *e;
  }
  /// Label j such that phi(j) = edge id, if any.
  std::optional<int> phi_label_of(const std::string& edge_id) const {
    for (const auto& [j, id] : phi)
      if (id == edge_id) return j;
    return std::nullopt;
  }
};

/// Named violations; empty iff the data satisfies Definition-level invariants.
inline std::vector<std::string> validate(const GluingData& d) {
  std::vector<std::string> report;
  auto bad = [&](const std::string& msg) { report.push_back(msg); };

  if (d.m < 2) bad("parameter m must be >= 2");
  if (d.k < 2) bad("parameter k must be >= 2");
  if (d.m < 2 || d.k < 2) return report;

  std::set<std::string> ids;
  for (const auto& e : d.edges) {
    if (!ids.insert(e.id).second) bad("duplicate edge id " + e.id);
    if (e.members.empty()) bad("edge " + e.id + " has no members");
    for (int i : e.members)
      if (i < 1 || i > d.m) bad("edge " + e.id + " member out of range");
    if (e.label < 1 || e.label > d.k) bad("edge " + e.id + " label out of range");
  }

  // edges of each label partition {1..m}
  for (int j = 1; j <= d.k; ++j) {
    std::vector<int> cover(d.m + 1, 0);
    for (const auto& e : d.edges)
      if (e.label == j)
        for (int i : e.members)
          if (i >= 1 && i <= d.m) ++cover[i];
    for (int i = 1; i <= d.m; ++i)
      if (cover[i] != 1)
        bad("label " + std::to_string(j) + " edges do not partition V(H) at copy " +
            std::to_string(i));
  }

  // phi: total on labels, injective, into E(H)
  std::set<std::string> phi_targets;
  for (int j = 1; j <= d.k; ++j) {
    auto it = d.phi.find(j);
    if (it == d.phi.end()) {
      bad("phi undefined for label " + std::to_string(j));
      continue;
    }
    if (!ids.count(it->second))
      bad("phi(" + std::to_string(j) + ") is not an edge id");
    if (!phi_targets.insert(it->second).second)
      bad("phi not injective at label " + std::to_string(j));
  }

  // connecting graphs and attach maps
  for (const auto& e : d.edges) {
    auto it = d.connecting.find(e.id);
    if (it == d.connecting.end()) {
      bad("no connecting graph for edge " + e.id);
      continue;
    }
    const ConnectingGraph& c = it->second;
    if (c.sigma.vertex_count() == 0 || !c.sigma.connected())
      bad("connecting graph of edge " + e.id + " is empty or disconnected");
    if (c.root < 0 || c.root >= c.sigma.vertex_count())
      bad("root of edge " + e.id + " out of range");
    auto at = d.attach.find(e.id);
    for (int i : e.members) {
      if (at == d.attach.end() || !at->second.count(i)) {
        bad("attach map of edge " + e.id + " missing member " + std::to_string(i));
        continue;
      }
      int v = at->second.at(i);
      if (v < 0 || v >= c.sigma.vertex_count())
        bad("attach map of edge " + e.id + " dangles at member " + std::to_string(i));
    }
  }
  return report;
}

inline void require_valid(const GluingData& d) {
  auto report = validate(d);
  if (!report.empty()) throw ValidationError("invalid gluing data: " + report.front());
}

/// Lambda(j) = label of phi(j), plus per-label orbit structure.
struct LabelDynamics {
  std::vector<int> lambda_map;     // index j-1 -> Lambda(j)
  std::vector<int> local_degree;   // index j-1 -> #phi(j)
  std::vector<int> periodic;       // sorted periodic labels
  int preperiod = 0;               // max steps for any label to reach the cycle set
  int period = 1;                  // lcm of cycle lengths
};

inline LabelDynamics label_dynamics(const GluingData& d) {
  require_valid(d);
  LabelDynamics ld;
  ld.lambda_map.resize(d.k);
  ld.local_degree.resize(d.k);
  for (int j = 1; j <= d.k; ++j) {
    const HyperEdge& e = d.phi_edge(j);
    ld.lambda_map[j - 1] = e.label;
    ld.local_degree[j - 1] = static_cast<int>(e.members.size());
  }
  auto step = [&](int j) { return ld.lambda_map[j - 1]; };
  // a label is periodic iff Lambda^k returns to it for some power <= k
  for (int j = 1; j <= d.k; ++j) {
    int v = j;
    for (int s = 0; s < d.k; ++s) {
      v = step(v);
      if (v == j) {
        ld.periodic.push_back(j);
        break;
      }
    }
  }
  for (int j = 1; j <= d.k; ++j) {
    int v = j, steps = 0;
    while (!std::binary_search(ld.periodic.begin(), ld.periodic.end(), v)) {
      v = step(v);
      ++steps;
    }
    ld.preperiod = std::max(ld.preperiod, steps);
  }
  std::set<int> seen;
  for (int j : ld.periodic) {
    if (seen.count(j)) continue;
    int len = 0, v = j;
    do {
      seen.insert(v);
      v = step(v);
      ++len;
    } while (v != j);
    ld.period = std::lcm(ld.period, len);
  }
  return ld;
}

/// One arc j -> Lambda(j) of the portrait, annotated "d:1" when #phi(j) >= 2.
struct PortraitArc {
  int from = 0;
  int to = 0;
  std::string annotation;  // empty when local degree is 1
};

inline std::vector<PortraitArc> portrait(const GluingData& d) {
  LabelDynamics ld = label_dynamics(d);
  std::vector<PortraitArc> arcs;
  for (int j = 1; j <= d.k; ++j) {
    PortraitArc a{j, ld.lambda_map[j - 1], ""};
    if (ld.local_degree[j - 1] >= 2)
      a.annotation = std::to_string(ld.local_degree[j - 1]) + ":1";
    arcs.push_back(a);
  }
  return arcs;
}

/// Greatest-fixed-point of the address-collision recurrence; decides the
/// "expanding" quantifier without materializing iterated gluing data.
struct CollisionResult {
  std::vector<std::vector<bool>> table;  // k x k, diagonal always true
  bool expanding = false;
  int witness_n = 0;   // first round with all off-diagonal entries false
  int rounds = 0;      // rounds until the table stabilized
};

inline CollisionResult collision_fixed_point(const GluingData& d) {
  require_valid(d);
  LabelDynamics ld = label_dynamics(d);
  auto members_of = [&](int j) {
    const auto& ms = d.phi_edge(j).members;
    return std::set<int>(ms.begin(), ms.end());
  };
  std::vector<std::set<int>> img(d.k);
  for (int j = 1; j <= d.k; ++j) img[j - 1] = members_of(j);
  auto intersects = [&](int j, int l) {
    for (int i : img[j - 1])
      if (img[l - 1].count(i)) return true;
    return false;
  };

  CollisionResult r;
  r.table.assign(d.k, std::vector<bool>(d.k, true));
  int max_rounds = d.k * d.k + 1;
  for (int round = 1; round <= max_rounds; ++round) {
    auto next = r.table;
    bool all_clear = true, changed = false;
    for (int j = 1; j <= d.k; ++j)
      for (int l = 1; l <= d.k; ++l) {
        if (j == l) continue;
        int lj = ld.lambda_map[j - 1], ll = ld.lambda_map[l - 1];
        bool tail = (lj == ll) ? true : r.table[lj - 1][ll - 1];
        bool v = intersects(j, l) && tail;
        if (v != r.table[j - 1][l - 1]) changed = true;
        next[j - 1][l - 1] = v;
        if (v) all_clear = false;
      }
    r.table = next;
    r.rounds = round;
    if (all_clear && r.witness_n == 0) r.witness_n = round;
    if (!changed) break;
    if (round == max_rounds)
      throw InternalError("collision table failed to stabilize in k^2+1 rounds");
  }
  bool clear = true;
  for (int j = 0; j < d.k; ++j)
    for (int l = 0; l < d.k; ++l)
      if (j != l && r.table[j][l]) clear = false;
  r.expanding = clear;
  return r;
}

struct Classification {
  bool non_degenerate = false;
  bool stable = false;
  bool expanding = false;
  std::optional<int> expanding_witness_n;
};

inline Classification classify(const GluingData& d) {
  require_valid(d);
  LabelDynamics ld = label_dynamics(d);
  Classification c;
  c.non_degenerate = true;
  for (int j : ld.periodic)
    if (ld.local_degree[j - 1] >= 2) c.non_degenerate = false;
  c.stable = c.non_degenerate;
  for (int j : ld.periodic) {
    const auto& cg = d.connecting.at(d.phi.at(j));
    if (cg.sigma.vertex_count() != 1) c.stable = false;
  }
  CollisionResult col = collision_fixed_point(d);
  c.expanding = col.expanding;
  if (col.expanding) c.expanding_witness_n = col.witness_n;
  return c;
}

/// Remark-style simplification: every connecting graph becomes a singleton.
inline GluingData simplify(const GluingData& d) {
  GluingData s = d;
  for (const auto& e : d.edges) {
    ConnectingGraph cg;
    cg.sigma = MultiGraph(1);
    cg.root = 0;
    s.connecting[e.id] = cg;
    auto& at = s.attach[e.id];
    at.clear();
    for (int i : e.members) at[i] = 0;
  }
  return s;
}

}  // namespace glupoly
