#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glupoly/catalog.hpp"
#include "glupoly/gluing.hpp"
#include "glupoly/io.hpp"

using namespace glupoly;

TEST_CASE("all catalog entries validate") {
  for (const auto& name : catalog_names()) {
    auto report = validate(catalog(name).data);
    CHECK_MESSAGE(report.empty(), name);
  }
}

TEST_CASE("validate rejects malformed data") {
  GluingData d = catalog("chebyshev").data;
  SUBCASE("m below 2") {
    d.m = 1;
    CHECK_FALSE(validate(d).empty());
  }
  SUBCASE("duplicate edge id") {
    d.edges.push_back(d.edges.front());
    CHECK_FALSE(validate(d).empty());
  }
  SUBCASE("phi not covering every label") {
    d.phi.erase(d.phi.begin());
    CHECK_FALSE(validate(d).empty());
  }
  SUBCASE("disconnected connecting graph") {
    d.connecting[d.edges.front().id].sigma = MultiGraph(2);
    CHECK_FALSE(validate(d).empty());
  }
}

TEST_CASE("label dynamics of the triangle scheme") {
  LabelDynamics ld = label_dynamics(catalog("sierpinski").data);
  // phi(j) = singleton at copy j carrying label j: Lambda = identity
  CHECK(ld.lambda_map == std::vector<int>{1, 2, 3});
  CHECK(ld.local_degree == std::vector<int>{1, 1, 1});
  CHECK(ld.period == 1);
  CHECK(ld.preperiod == 0);
  CHECK(ld.periodic == std::vector<int>{1, 2, 3});
}

TEST_CASE("classification of the catalog") {
  for (const auto& name : catalog_names()) {
    Classification c = classify(catalog(name).data);
    if (name == "degenerate-demo") {
      CHECK_FALSE(c.non_degenerate);
    } else {
      CHECK(c.non_degenerate);
      CHECK(c.stable);
      CHECK(c.expanding);
      CHECK(c.expanding_witness_n == std::optional<int>(1));
    }
  }
}

TEST_CASE("portrait lists one arc per label") {
  auto arcs = portrait(catalog("chebyshev-tripod").data);
  CHECK(arcs.size() == 2);
}

TEST_CASE("classification is invariant under simplify") {
  for (const auto& name : catalog_names()) {
    const GluingData& d = catalog(name).data;
    Classification a = classify(d);
    Classification b = classify(simplify(d));
    CHECK(a.non_degenerate == b.non_degenerate);
    CHECK(a.stable == b.stable);
    CHECK(a.expanding == b.expanding);
  }
}

TEST_CASE("gluing json round trip") {
  for (const auto& name : catalog_names()) {
    const GluingData& d = catalog(name).data;
    GluingData back = io::parse_gluing(io::write_gluing(d));
    CHECK(back.m == d.m);
    CHECK(back.k == d.k);
    REQUIRE(back.edges.size() == d.edges.size());
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      CHECK(back.edges[i].id == d.edges[i].id);
      CHECK(back.edges[i].members == d.edges[i].members);
      CHECK(back.edges[i].label == d.edges[i].label);
    }
    for (const auto& [id, cg] : d.connecting) {
      CHECK(back.connecting.at(id).sigma == cg.sigma);
      CHECK(back.connecting.at(id).root == cg.root);
    }
    CHECK(back.attach == d.attach);
    CHECK(back.phi == d.phi);
  }
}
