#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glupoly/catalog.hpp"
#include "glupoly/io.hpp"

using namespace glupoly;

TEST_CASE("polynomial text round trip") {
  Polynomial p({mpz_class(1), mpz_class(0), mpz_class(-7), mpz_class(42)});
  Polynomial q = io::parse_poly(io::write_poly(p));
  CHECK(q.coefficients() == p.coefficients());
  CHECK(io::parse_poly(io::write_poly(Polynomial::zero())).is_zero());
}

TEST_CASE("marked graph round trip") {
  for (const auto& name : catalog_names()) {
    MarkedGraph g = catalog(name).start;
    MarkedGraph back = io::parse_graph(io::write_graph(g));
    CHECK(back == g);
  }
}

TEST_CASE("graph with loops and parallel edges survives the round trip") {
  MultiGraph m(3);
  m.add_edge(0, 1);
  m.add_edge(0, 1);
  m.add_edge(2, 2);
  MarkedGraph g(m, {0, 2});
  CHECK(io::parse_graph(io::write_graph(g)) == g);
}

TEST_CASE("gluing json survives the round trip and still validates") {
  for (const auto& name : catalog_names()) {
    const GluingData& d = catalog(name).data;
    GluingData back = io::parse_gluing(io::write_gluing(d));
    CHECK(validate(back).empty() == validate(d).empty());
    CHECK(io::write_gluing(back) == io::write_gluing(d));
  }
}

TEST_CASE("malformed inputs are refused with ValidationError") {
  CHECK_THROWS_AS(io::parse_gluing("not json at all"), ValidationError);
  CHECK_THROWS_AS(io::parse_gluing("{}"), ValidationError);
  CHECK_THROWS_AS(io::parse_poly("poly deg 2: 1 2"), ValidationError);
  CHECK_THROWS_AS(io::parse_graph("graph ???"), ValidationError);
}

TEST_CASE("dot export mentions every vertex and the marks") {
  MarkedGraph g = catalog("chebyshev-tripod").start;
  std::string dot = io::write_dot(g);
  CHECK(dot.find("graph") != std::string::npos);
  for (int v : g.marks)
    CHECK(dot.find(std::to_string(v)) != std::string::npos);
}
