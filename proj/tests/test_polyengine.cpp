#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "glupoly/catalog.hpp"
#include "glupoly/io.hpp"
#include "glupoly/oracle.hpp"
#include "glupoly/polyengine.hpp"
#include "glupoly/recursion.hpp"

using namespace glupoly;

namespace {
std::vector<mpz_class> zc(std::initializer_list<long> v) {
  return std::vector<mpz_class>(v.begin(), v.end());
}
}  // namespace

// frozen values, independently recomputed by the brute-force oracle below
TEST_CASE("chebyshev levels 0-2, exact coefficients") {
  auto e = catalog("chebyshev");
  auto seq = sequence(e.data, e.start, 2);
  const auto& v0 = seq.levels[0];
  CHECK(v0.entries[0].coefficients() == zc({1}));
  CHECK(v0.entries[1].coefficients() == zc({0, 1}));
  CHECK(v0.entries[3].is_zero());  // adjacent marks cannot both be occupied
  CHECK(v0.total().coefficients() == zc({1, 2}));

  const auto& v2 = seq.levels[2];
  CHECK(v2.vertex_count == 5);
  CHECK(v2.entries[0].coefficients() == zc({1, 3, 1}));
  CHECK(v2.entries[1].coefficients() == zc({0, 1, 2}));
  CHECK(v2.entries[3].coefficients() == zc({0, 0, 1, 1}));
  CHECK(v2.total().coefficients() == zc({1, 5, 6, 1}));
}

TEST_CASE("sierpinski levels 0-1, exact coefficients") {
  auto e = catalog("sierpinski");
  auto seq = sequence(e.data, e.start, 1);
  const auto& v1 = seq.levels[1];
  CHECK(v1.vertex_count == 6);
  CHECK(v1.entries[0].coefficients() == zc({1, 3}));
  CHECK(v1.entries[1].coefficients() == zc({0, 1, 1}));
  CHECK(v1.entries[7].coefficients() == zc({0, 0, 0, 1}));
  CHECK(v1.total().coefficients() == zc({1, 6, 6, 1}));
}

TEST_CASE("tripod initial vector, exact coefficients") {
  auto e = catalog("chebyshev-tripod");
  PolyVector v0 = initial_vector(e.start);
  CHECK(v0.entries[0].coefficients() == zc({1, 5, 6, 1}));
  CHECK(v0.entries[1].coefficients() == zc({0, 1, 4, 4, 1}));
  CHECK(v0.entries[2].coefficients() == zc({0, 1, 4, 4, 1}));
  CHECK(v0.entries[3].coefficients() == zc({0, 0, 1, 3, 3, 1}));
  CHECK(v0.total().coefficients() == zc({1, 7, 15, 12, 5, 1}));
}

TEST_CASE("recursion equals brute force on every catalog entry") {
  for (const auto& name : catalog_names()) {
    if (name == "degenerate-demo") continue;
    auto e = catalog(name);
    int n_max = (name == "chebyshev") ? 4 : 2;
    auto seq = sequence(e.data, e.start, n_max);
    MarkedGraph g = e.start;
    for (int n = 0; n <= n_max; ++n) {
      if (n > 0) g = apply(e.data, g);
      if (g.graph.vertex_count() > 25) break;
      const PolyVector& v = seq.levels[std::size_t(n)];
      CHECK(v.vertex_count == g.graph.vertex_count());
      for (unsigned x = 0; x < v.entries.size(); ++x) {
        Polynomial want = oracle::conditioned_poly(g, x);
        CHECK_MESSAGE(v.entries[x].coefficients() == want.coefficients(),
                      name << " n=" << n << " entry=" << x);
      }
      CHECK(v.total().coefficients() ==
            oracle::indep_poly(g.graph).coefficients());
    }
  }
}

TEST_CASE("conditioned entries sum to the total at every level") {
  auto e = catalog("chebyshev-tripod");
  auto seq = sequence(e.data, e.start, 4);
  for (const auto& v : seq.levels) {
    Polynomial sum;
    for (const auto& p : v.entries) sum += p;
    CHECK(sum.coefficients() == v.total().coefficients());
    CHECK(sum.nonnegative());
  }
}

TEST_CASE("degree budget truncates the sequence") {
  auto e = catalog("chebyshev-tripod");
  auto seq = sequence(e.data, e.start, 10, 100);
  CHECK(seq.truncated);
  CHECK(seq.levels.back().total().degree() <= 100);
}

TEST_CASE("free energy of the path at lambda=1 approaches log phi") {
  auto e = catalog("chebyshev");
  auto fe = free_energy_sequence(e.data, e.start, 12, {1.0, 0.0});
  REQUIRE(fe.back().has_value());
  const double log_phi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  CHECK(std::abs(*fe.back() - log_phi) < 1e-3);
}
