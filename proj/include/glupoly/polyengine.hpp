#pragma once

#include <bit>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glupoly/errors.hpp"
#include "glupoly/gluing.hpp"
#include "glupoly/multigraph.hpp"
#include "glupoly/oracle.hpp"
#include "glupoly/polynomial.hpp"

namespace glupoly {

/// The 2^k conditioned partition functions of one level; entry index is the
/// mark assignment read as a binary integer (label 1 least significant).
struct PolyVector {
  std::vector<Polynomial> entries;
  int level = 0;
  long long vertex_count = 0;  // |V(G_level)|, tracked by the count recursion

  int k() const { return std::countr_zero(entries.size()); }

  Polynomial total() const {
    Polynomial t;
    for (const auto& e : entries) t += e;
    return t;
  }
};

/// Conditioned partition functions of one connecting graph: indexed by the
/// member-assignment bits (member order = sorted copy order of the edge)
/// plus, for rooted edges, the root bit in the next position.
struct EdgeWeights {
  bool rooted = false;  // edge lies in the image of phi
  int arity = 0;        // number of members
  std::vector<Polynomial> table;

  const Polynomial& at(unsigned member_bits, int root_bit) const {
    unsigned idx = member_bits;
    if (rooted) idx |= unsigned(root_bit) << arity;
    return table[idx];
  }
};

using LocalWeightTable = std::map<std::string, EdgeWeights>;

/// Brute-force conditioned weights Z_e for every edge, member assignment,
/// and root bit. Constraint conflicts (non-injective attach, root equal to
/// an attached vertex) yield the zero polynomial.
inline LocalWeightTable local_weights(const GluingData& d) {
  require_valid(d);
  LocalWeightTable out;
  for (const auto& e : d.edges) {
    const ConnectingGraph& cg = d.connecting.at(e.id);
    const auto& at = d.attach.at(e.id);
    EdgeWeights w;
    w.arity = static_cast<int>(e.members.size());
    w.rooted = d.phi_label_of(e.id).has_value();
    unsigned slots = 1u << (w.arity + (w.rooted ? 1 : 0));
    w.table.resize(slots);
    for (unsigned idx = 0; idx < slots; ++idx) {
      std::vector<std::pair<int, int>> fixed;
      for (int p = 0; p < w.arity; ++p)
        fixed.emplace_back(at.at(e.members[p]), int(idx >> p & 1));
      if (w.rooted) fixed.emplace_back(cg.root, int(idx >> w.arity & 1));
      // conflicting pins on one vertex are rejected inside the oracle
      bool conflict = false;
      for (std::size_t a = 0; a < fixed.size() && !conflict; ++a)
        for (std::size_t b = a + 1; b < fixed.size(); ++b)
          if (fixed[a].first == fixed[b].first && fixed[a].second != fixed[b].second) {
            conflict = true;
            break;
          }
      w.table[idx] = conflict ? Polynomial::zero()
                              : oracle::conditioned_count(cg.sigma, fixed);
    }
    out[e.id] = w;
  }
  return out;
}

inline constexpr long long kDefaultDegreeBudget = 100'000;

/// (x)_0 from the starting graph by brute force.
inline PolyVector initial_vector(const MarkedGraph& g0,
                                 int brute_limit = oracle::kDefaultVertexLimit) {
  PolyVector v;
  v.level = 0;
  v.vertex_count = g0.graph.vertex_count();
  v.entries.resize(std::size_t{1} << g0.k());
  for (unsigned x = 0; x < v.entries.size(); ++x)
    v.entries[x] = oracle::conditioned_poly(g0, x, brute_limit);
  return v;
}

/// Vertex count after one recursion step (identifications resolved as one
/// per edge member, i.e. injective attach images).
inline long long next_vertex_count(const GluingData& d, long long count) {
  long long c = d.m * count;
  for (const auto& e : d.edges)
    c += d.connecting.at(e.id).sigma.vertex_count() -
         static_cast<long long>(e.members.size());
  return c;
}

/// One application of the 2^k-dimensional recursion, in exact integer
/// arithmetic. Per-term division by lambda powers is performed against the
/// copy factors, where it is provably exact for graph-derived vectors.
inline PolyVector step(const GluingData& d, const PolyVector& v,
                       const LocalWeightTable& weights) {
  require_valid(d);
  const int k = d.k, m = d.m;
  const std::size_t dim = std::size_t{1} << k;
  if (v.entries.size() != dim)
    throw ValidationError("vector size does not match 2^k");

  // q(y) = (y)_n / lambda^{||y||}; exactness asserted in shifted_down
  std::vector<Polynomial> q(dim);
  for (unsigned y = 0; y < dim; ++y)
    q[y] = v.entries[y].shifted_down(std::popcount(y));

  // root labels per edge, resolved once
  struct EdgeRef {
    const HyperEdge* e;
    const EdgeWeights* w;
    int root_label;  // 0 if unrooted
  };
  std::vector<EdgeRef> erefs;
  for (const auto& e : d.edges) {
    auto j = d.phi_label_of(e.id);
    erefs.push_back({&e, &weights.at(e.id), j ? *j : 0});
  }

  PolyVector out;
  out.level = v.level + 1;
  out.vertex_count = next_vertex_count(d, v.vertex_count);
  out.entries.assign(dim, Polynomial::zero());

  const std::size_t y_space = std::size_t{1} << (std::size_t(m) * k);
  for (std::size_t Y = 0; Y < y_space; ++Y) {
    auto ybits = [&](int copy, int label) {
      return unsigned(Y >> (std::size_t(copy - 1) * k + (label - 1)) & 1);
    };
    // shared copy-factor product for this Y
    Polynomial copyprod = Polynomial::one();
    bool zero = false;
    for (int i = 1; i <= m && !zero; ++i) {
      unsigned yi = unsigned(Y >> (std::size_t(i - 1) * k)) & unsigned(dim - 1);
      if (q[yi].is_zero()) zero = true;
      else copyprod *= q[yi];
    }
    if (zero) continue;

    // factor independent of the output assignment
    Polynomial base = Polynomial::one();
    bool base_zero = false;
    for (const auto& er : erefs) {
      if (er.root_label != 0) continue;
      unsigned mb = 0;
      for (std::size_t p = 0; p < er.e->members.size(); ++p)
        mb |= ybits(er.e->members[p], er.e->label) << p;
      const Polynomial& f = er.w->at(mb, 0);
      if (f.is_zero()) {
        base_zero = true;
        break;
      }
      base *= f;
    }
    if (base_zero) continue;

    for (unsigned x = 0; x < dim; ++x) {
      Polynomial factor = base;
      bool term_zero = false;
      for (const auto& er : erefs) {
        if (er.root_label == 0) continue;
        unsigned mb = 0;
        for (std::size_t p = 0; p < er.e->members.size(); ++p)
          mb |= ybits(er.e->members[p], er.e->label) << p;
        const Polynomial& f = er.w->at(mb, int(x >> (er.root_label - 1) & 1));
        if (f.is_zero()) {
          term_zero = true;
          break;
        }
        factor *= f;
      }
      if (term_zero) continue;
      out.entries[x] += copyprod * factor;
    }
  }
  return out;
}

struct SequenceResult {
  std::vector<PolyVector> levels;  // levels 0..n, possibly fewer when truncated
  bool truncated = false;
  std::string notice;
};

/// Levels 0..n_max of the recursion, stopping early at the degree budget.
inline SequenceResult sequence(const GluingData& d, const MarkedGraph& g0,
                               int n_max,
                               long long degree_budget = kDefaultDegreeBudget,
                               int brute_limit = oracle::kDefaultVertexLimit) {
  require_valid(d);
  LocalWeightTable w = local_weights(d);
  SequenceResult r;
  r.levels.push_back(initial_vector(g0, brute_limit));
  for (int n = 1; n <= n_max; ++n) {
    // entry degrees are bounded by the vertex count of the next level
    if (next_vertex_count(d, r.levels.back().vertex_count) > degree_budget) {
      r.truncated = true;
      r.notice = "degree budget reached after level " + std::to_string(n - 1);
      break;
    }
    r.levels.push_back(step(d, r.levels.back(), w));
  }
  return r;
}

/// Per-level log|Z_{G_n}(lambda)| / |V(G_n)|; nullopt where Z vanishes.
inline std::vector<std::optional<double>> free_energy_sequence(
    const GluingData& d, const MarkedGraph& g0, int n_max,
    std::complex<double> lambda,
    long long degree_budget = kDefaultDegreeBudget) {
  SequenceResult seq = sequence(d, g0, n_max, degree_budget);
  std::vector<std::optional<double>> out;
  for (const auto& v : seq.levels) {
    ExpComplex z = v.total().eval_exp(lambda);
    if (z.is_zero())
      out.push_back(std::nullopt);
    else
      out.push_back(z.log_abs() / double(v.vertex_count));
  }
  return out;
}

}  // namespace glupoly
