#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glupoly/catalog.hpp"
#include "glupoly/multigraph.hpp"
#include "glupoly/oracle.hpp"

using namespace glupoly;

TEST_CASE("multigraph keeps parallel edges and loops") {
  MultiGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(1, 2);
  g.add_edge(2, 2);
  CHECK(g.edges().size() == 4);
  CHECK(g.connected());
  auto masks = g.adjacency_masks();
  CHECK((masks[0] & 2) != 0);
  CHECK((masks[2] & 4) != 0);  // loop shows up on the diagonal
}

TEST_CASE("factory graphs have the expected shape") {
  CHECK(MultiGraph::complete(4).edges().size() == 6);
  CHECK(MultiGraph::path(5).edges().size() == 4);
  CHECK(MultiGraph::star(3).vertex_count() == 4);
  CHECK_FALSE(MultiGraph(2).connected());
}

TEST_CASE("distances") {
  MultiGraph p = MultiGraph::path(4);
  auto d = p.distances_from(0);
  CHECK(d == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("independence polynomial of small graphs") {
  // P_3: 1 + 3x + x^2 (independent pairs: the two endpoints)
  Polynomial p3 = oracle::indep_poly(MultiGraph::path(3));
  CHECK(p3.coefficients() == std::vector<mpz_class>{1, 3, 1});
  // K_4: 1 + 4x
  Polynomial k4 = oracle::indep_poly(MultiGraph::complete(4));
  CHECK(k4.coefficients() == std::vector<mpz_class>{1, 4});
  // a looped vertex can never be occupied
  MultiGraph l(1);
  l.add_edge(0, 0);
  CHECK(oracle::indep_poly(l).coefficients() == std::vector<mpz_class>{1});
}

TEST_CASE("deletion recurrence Z(G) = Z(G-v) + x Z(G-N[v])") {
  MultiGraph g = MultiGraph::path(6);
  // delete vertex 0: remainder is P_5; delete N[0]: remainder is P_4
  MultiGraph g_minus_v(5), g_minus_nv(4);
  for (int i = 0; i + 1 < 5; ++i) g_minus_v.add_edge(i, i + 1);
  for (int i = 0; i + 1 < 4; ++i) g_minus_nv.add_edge(i, i + 1);
  Polynomial lhs = oracle::indep_poly(g);
  Polynomial rhs = oracle::indep_poly(g_minus_v) +
                   oracle::indep_poly(g_minus_nv).shifted_up(1);
  CHECK(lhs.coefficients() == rhs.coefficients());
}

TEST_CASE("conditioned polynomials sum to the total") {
  MultiGraph g = MultiGraph::path(4);
  MarkedGraph mg(g, {0, 3});
  Polynomial total = oracle::indep_poly(g);
  Polynomial sum = oracle::sum_over_assignments(mg);
  CHECK(sum.coefficients() == total.coefficients());
}

TEST_CASE("oracle refuses graphs above the vertex limit") {
  CHECK_THROWS_AS(oracle::indep_poly(MultiGraph(26)), BudgetError);
}

TEST_CASE("maximal independence of K2 with both ends marked is false") {
  MultiGraph k2 = MultiGraph::complete(2);
  MarkedGraph g(k2, {0, 1});
  auto rep = oracle::is_maximally_independent(g);
  CHECK_FALSE(rep.maximally_independent);
}

TEST_CASE("maximal independence of the tripod start is true") {
  auto rep = oracle::is_maximally_independent(catalog("chebyshev-tripod").start);
  CHECK(rep.maximally_independent);
  CHECK(rep.size_gap == 2);
}
