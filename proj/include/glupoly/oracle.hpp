#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glupoly/errors.hpp"
#include "glupoly/multigraph.hpp"
#include "glupoly/polynomial.hpp"

namespace glupoly {

/// Brute-force independent-set enumeration and (conditioned) independence
/// polynomials. This is the oracle the fast path is checked against; it is
/// deliberately unoptimized and refuses graphs beyond the vertex limit.
namespace oracle {

inline constexpr int kDefaultVertexLimit = 25;

namespace detail {

struct Prep {
  int n;
  std::vector<std::uint64_t> adj;   // neighbor masks, self-bit set for loops
  std::uint64_t looped = 0;         // vertices carrying a loop (never occupied)
};

inline Prep prep(const MultiGraph& g, int limit) {
  if (g.vertex_count() > limit)
    throw BudgetError("brute force refused: " +
                      std::to_string(g.vertex_count()) + " vertices exceeds limit " +
                      std::to_string(limit));
  Prep p{g.vertex_count(), g.adjacency_masks(), 0};
  for (int v = 0; v < p.n; ++v)
    if (p.adj[v] >> v & 1) p.looped |= std::uint64_t{1} << v;
  return p;
}

/// Visit every independent set containing `chosen`, avoiding `banned`,
/// deciding vertices >= `next` freely. Forced-in vertices must already be
/// in `chosen` with their neighborhoods in `banned`.
template <class Visit>
void enumerate(const Prep& p, int next, std::uint64_t chosen,
               std::uint64_t banned, std::uint64_t forced_zero, int size,
               Visit&& visit) {
  if (next == p.n) {
    visit(chosen, size);
    return;
  }
  std::uint64_t bit = std::uint64_t{1} << next;
  enumerate(p, next + 1, chosen, banned, forced_zero, size, visit);
  if ((banned & bit) || (forced_zero & bit) || (p.looped & bit)) return;
  enumerate(p, next + 1, chosen | bit, banned | p.adj[next], forced_zero,
            size + 1, visit);
}

/// Set up forced assignments; returns false when the forced-1 set is itself
/// dependent (no independent set satisfies the constraints).
inline bool apply_fixed(const Prep& p,
                        const std::vector<std::pair<int, int>>& fixed,
                        std::uint64_t& chosen, std::uint64_t& banned,
                        std::uint64_t& forced_zero, int& size) {
  chosen = banned = forced_zero = 0;
  size = 0;
  for (auto [v, bit] : fixed) {
    std::uint64_t b = std::uint64_t{1} << v;
    if (bit == 0) {
      if (chosen & b) return false;
      forced_zero |= b;
    } else {
      if (forced_zero & b) return false;
      if (chosen & b) continue;
      if ((banned & b) || (p.looped & b)) return false;
      chosen |= b;
      banned |= p.adj[v];
      ++size;
    }
  }
  return true;
}

}  // namespace detail

/// All independent sets as vertex bitmasks (the empty set included).
inline std::vector<std::uint64_t> independent_set_masks(
    const MultiGraph& g, int limit = kDefaultVertexLimit) {
  auto p = detail::prep(g, limit);
  std::vector<std::uint64_t> out;
  detail::enumerate(p, 0, 0, 0, 0, 0,
                    [&](std::uint64_t s, int) { out.push_back(s); });
  return out;
}

inline std::vector<std::vector<int>> independent_sets(
    const MultiGraph& g, int limit = kDefaultVertexLimit) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask : independent_set_masks(g, limit)) {
    std::vector<int> s;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (mask >> v & 1) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

/// Independence polynomial with some vertices pinned to 0/1.
/// `fixed` holds (vertex, bit) pairs; conflicting constraints give 0.
inline Polynomial conditioned_count(const MultiGraph& g,
                                    const std::vector<std::pair<int, int>>& fixed,
                                    int limit = kDefaultVertexLimit) {
  auto p = detail::prep(g, limit);
  std::uint64_t chosen, banned, forced_zero;
  int size;
  if (!detail::apply_fixed(p, fixed, chosen, banned, forced_zero, size))
    return Polynomial::zero();
  std::vector<mpz_class> counts(g.vertex_count() + 1, mpz_class(0));
  detail::enumerate(p, 0, chosen, banned | chosen, forced_zero, size,
                    [&](std::uint64_t, int sz) { counts[sz] += 1; });
  return Polynomial(std::move(counts));
}

inline Polynomial indep_poly(const MultiGraph& g,
                             int limit = kDefaultVertexLimit) {
  return conditioned_count(g, {}, limit);
}

/// Z_G(lambda, tau): marks pinned to the bits of `assignment`
/// (bit j-1 = value at the vertex labeled j; label 1 least significant).
inline Polynomial conditioned_poly(const MarkedGraph& g, unsigned assignment,
                                   int limit = kDefaultVertexLimit) {
  if (assignment >> g.k())
    throw std::invalid_argument("assignment has more bits than marks");
  std::vector<std::pair<int, int>> fixed;
  for (int j = 0; j < g.k(); ++j)
    fixed.emplace_back(g.marks[j], int(assignment >> j & 1));
  return conditioned_count(g.graph, fixed, limit);
}

inline Polynomial sum_over_assignments(const MarkedGraph& g,
                                       int limit = kDefaultVertexLimit) {
  Polynomial total;
  for (unsigned a = 0; a < (1u << g.k()); ++a)
    total += conditioned_poly(g, a, limit);
  return total;
}

struct MaxAgree {
  bool exists = false;
  int max_size = 0;
  long long count = 0;
  std::uint64_t witness = 0;
};

/// Largest independent sets agreeing with `assignment` on the marks.
inline MaxAgree max_agreeing_sets(const MarkedGraph& g, unsigned assignment,
                                  int limit = kDefaultVertexLimit) {
  auto p = detail::prep(g.graph, limit);
  std::vector<std::pair<int, int>> fixed;
  for (int j = 0; j < g.k(); ++j)
    fixed.emplace_back(g.marks[j], int(assignment >> j & 1));
  std::uint64_t chosen, banned, forced_zero;
  int size;
  if (!detail::apply_fixed(p, fixed, chosen, banned, forced_zero, size))
    return {};
  MaxAgree r;
  detail::enumerate(p, 0, chosen, banned | chosen, forced_zero, size,
                    [&](std::uint64_t s, int sz) {
                      if (!r.exists || sz > r.max_size) {
                        r.exists = true;
                        r.max_size = sz;
                        r.count = 1;
                        r.witness = s;
                      } else if (sz == r.max_size) {
                        ++r.count;
                      }
                    });
  return r;
}

struct MaxIndependenceReport {
  bool maximally_independent = false;
  std::vector<MaxAgree> per_assignment;  // indexed by assignment
  int size_gap = 0;                      // #I(1..1) - #I(0..0)
};

/// Checks the definition: unique maximum for every assignment and the
/// all-ones / all-zeros sizes differ by exactly k.
inline MaxIndependenceReport is_maximally_independent(
    const MarkedGraph& g, int limit = kDefaultVertexLimit) {
  MaxIndependenceReport rep;
  bool all_unique = true;
  for (unsigned a = 0; a < (1u << g.k()); ++a) {
    MaxAgree m = max_agreeing_sets(g, a, limit);
    if (!m.exists || m.count != 1) all_unique = false;
    rep.per_assignment.push_back(m);
  }
  const MaxAgree& ones = rep.per_assignment.back();
  const MaxAgree& zeros = rep.per_assignment.front();
  if (ones.exists && zeros.exists)
    rep.size_gap = ones.max_size - zeros.max_size;
  rep.maximally_independent = all_unique && rep.size_gap == g.k();
  return rep;
}

}  // namespace oracle
}  // namespace glupoly
