#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "glupoly/catalog.hpp"
#include "glupoly/zeros.hpp"

using namespace glupoly;
using cplx = std::complex<double>;

namespace {
Polynomial poly(std::initializer_list<long> coeffs) {
  std::vector<mpz_class> c;
  for (long v : coeffs) c.emplace_back(v);
  return Polynomial(std::move(c));
}
}  // namespace

TEST_CASE("linear and quadratic roots") {
  RootResult r = find_roots(poly({1, 3}));
  REQUIRE(r.roots.size() == 1);
  CHECK(std::abs(r.roots[0] - cplx(-1.0 / 3.0, 0.0)) < 1e-14);

  // 1 + 3x + x^2: roots (-3 +- sqrt(5))/2
  r = find_roots(poly({1, 3, 1}));
  REQUIRE(r.roots.size() == 2);
  CHECK(std::abs(r.roots[0] - cplx(-2.6180339887498949, 0.0)) < 1e-12);
  CHECK(std::abs(r.roots[1] - cplx(-0.38196601125010515, 0.0)) < 1e-12);
}

TEST_CASE("zero roots are deflated exactly") {
  RootResult r = find_roots(poly({0, 0, 1, 1}));  // x^2(x+1)
  REQUIRE(r.roots.size() == 3);
  CHECK(r.roots[0] == cplx(0.0, 0.0));
  CHECK(r.roots[1] == cplx(0.0, 0.0));
  CHECK(std::abs(r.roots[2] - cplx(-1.0, 0.0)) < 1e-13);
  CHECK(r.residuals[0] == 0.0);
}

TEST_CASE("complex roots come in conjugate pairs") {
  // x^4 + 1: all roots on the unit circle, none real
  RootResult r = find_roots(poly({1, 0, 0, 0, 1}));
  REQUIRE(r.roots.size() == 4);
  for (const auto& z : r.roots) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-13);
    bool has_conj = false;
    for (const auto& w : r.roots)
      if (std::abs(w - std::conj(z)) < 1e-10) has_conj = true;
    CHECK(has_conj);
  }
}

TEST_CASE("wilkinson-style spread of real roots") {
  // prod (x + j), j=1..10
  Polynomial p = poly({1});
  for (long j = 1; j <= 10; ++j) p *= poly({j, 1});
  RootResult r = find_roots(p);
  REQUIRE(r.roots.size() == 10);
  std::sort(r.roots.begin(), r.roots.end(),
            [](cplx a, cplx b) { return a.real() < b.real(); });
  for (long j = 10; j >= 1; --j) {
    cplx got = r.roots[std::size_t(10 - j)];
    CHECK(std::abs(got - cplx(double(-j), 0.0)) < 1e-7 * double(j));
  }
}

TEST_CASE("root set is invariant under coefficient scaling") {
  Polynomial p = poly({1, 7, 15, 12, 5, 1});
  Polynomial q = poly({1000, 7000, 15000, 12000, 5000, 1000});
  RootResult rp = find_roots(p), rq = find_roots(q);
  REQUIRE(rp.roots.size() == rq.roots.size());
  for (const auto& z : rp.roots) {
    double best = 1e300;
    for (const auto& w : rq.roots) best = std::min(best, std::abs(z - w));
    CHECK(best < 1e-10 * (1.0 + std::abs(z)));
  }
}

TEST_CASE("backward residuals stay under the contract tolerance") {
  auto e = catalog("chebyshev-tripod");
  auto seq = sequence(e.data, e.start, 4);
  RootResult r = find_roots(seq.levels[4].total());
  for (double res : r.residuals) CHECK(res < kRootResidualTol);
}

TEST_CASE("determinism: same seed, same roots") {
  Polynomial p = poly({1, 13, 66, 169, 240, 203, 111, 40, 9, 1});
  RootResult a = find_roots(p, 7), b = find_roots(p, 7);
  CHECK(a.roots == b.roots);
}

TEST_CASE("zero polynomial is refused") {
  CHECK_THROWS_AS(find_roots(Polynomial::zero()), ValidationError);
}

TEST_CASE("recursion-based evaluation agrees with the coefficient path") {
  auto e = catalog("chebyshev-tripod");
  auto seq = sequence(e.data, e.start, 4);
  Polynomial total = seq.levels[4].total();
  RecursionEvaluator rec(e.data, seq.levels[0], 4);
  RootResult plain = find_roots(total, 3);
  RootResult via_rec = find_roots(total, 3, kRootResidualTol, nullptr, &rec);
  REQUIRE(plain.roots.size() == via_rec.roots.size());
  for (const auto& z : plain.roots) {
    double best = 1e300;
    for (const auto& w : via_rec.roots) best = std::min(best, std::abs(z - w));
    CHECK(best < 1e-8 * (1.0 + std::abs(z)));
  }
}

TEST_CASE("atlas levels carry sorted sane roots") {
  auto e = catalog("chebyshev");
  ZeroAtlas a = atlas(e.data, e.start, 6);
  REQUIRE(a.levels.size() == 7);
  CHECK_FALSE(a.truncated);
  for (const auto& lv : a.levels) {
    CHECK(lv.degree == long(lv.roots.size()));
    CHECK(lv.max_modulus > 0);
    // path independence polynomials have only real negative roots
    for (const auto& z : lv.roots) {
      CHECK(z.imag() == 0.0);
      CHECK(z.real() < 0.0);
    }
  }
  CHECK(boundedness_report(a) == BoundednessVerdict::Growing);
}

TEST_CASE("boundedness verdict needs enough levels") {
  auto e = catalog("chebyshev");
  ZeroAtlas a = atlas(e.data, e.start, 3);
  CHECK_THROWS_AS(boundedness_report(a), ValidationError);
}
