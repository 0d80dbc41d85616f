#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "glupoly/catalog.hpp"
#include "glupoly/dynamics.hpp"

using namespace glupoly;
using cplx = std::complex<double>;

TEST_CASE("chebyshev map at lambda=1 doubles the all-ones vector") {
  auto e = catalog("chebyshev");
  CompiledMap map(e.data, {1.0, 0.0});
  NumVector v{{1, 1, 1, 1}, {1.0, 0.0}};
  NumVector w = eval_F(map, v);
  for (const auto& c : w.entries) CHECK(std::abs(c - cplx(2.0, 0.0)) < 1e-15);
}

TEST_CASE("numeric map matches the polynomial recursion") {
  // evaluating the level polynomials at lambda must agree with iterating F
  auto e = catalog("chebyshev-tripod");
  cplx lambda(0.7, 0.3);
  CompiledMap map(e.data, lambda);
  PolyVector pv = initial_vector(e.start);
  NumVector nv = initial_numvector(e.start, lambda);
  LocalWeightTable w = local_weights(e.data);
  for (int n = 1; n <= 3; ++n) {
    pv = step(e.data, pv, w);
    nv = eval_F(map, nv);
    // projective comparison: ratios of corresponding entries agree
    cplx want0 = pv.entries[0].eval(lambda);
    for (unsigned x = 1; x < pv.entries.size(); ++x) {
      cplx want = pv.entries[x].eval(lambda) / want0;
      cplx got = nv.entries[x] / nv.entries[0];
      CHECK(std::abs(want - got) < 1e-9 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("manifold invariance under one chart step") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& name : catalog_names()) {
    if (name == "degenerate-demo") continue;
    const GluingData& d = catalog(name).data;
    for (int trial = 0; trial < 25; ++trial) {
      cplx lambda(1.0 + 0.5 * u(rng), 0.5 * u(rng));
      std::vector<cplx> free(std::size_t(d.k));
      for (auto& c : free) c = cplx(0.5 + 0.4 * u(rng), 0.4 * u(rng));
      ChartPoint p = manifold_point(free, lambda);
      REQUIRE(manifold_residual(p) < 1e-14);
      CompiledMap map(d, lambda);
      ChartPoint q = step_chart(map, p);
      CHECK(manifold_residual(q) < 1e-12);
    }
  }
}

TEST_CASE("analytic jacobian matches finite differences") {
  auto e = catalog("chebyshev-tripod");
  cplx lambda(1.3, 0.2);
  CompiledMap map(e.data, lambda);
  ChartPoint p = manifold_point({{0.6, 0.1}, {0.8, -0.2}}, lambda);
  Matrix J = jacobian_chart(map, p);
  const double h = 1e-6;
  for (int c = 0; c < p.dim(); ++c) {
    ChartPoint pp = p, pm = p;
    pp.coords[std::size_t(c)] += h;
    pm.coords[std::size_t(c)] -= h;
    ChartPoint fp = step_chart(map, pp), fm = step_chart(map, pm);
    for (int r = 0; r < p.dim(); ++r) {
      cplx fd = (fp.coords[std::size_t(r)] - fm.coords[std::size_t(r)]) / (2 * h);
      CHECK(std::abs(J.at(r, c) - fd) < 1e-5 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("spectral structure at the fixed manifold") {
  // sierpinski: D=7, expected rank k0=3, kernel 4
  {
    const GluingData& d = catalog("sierpinski").data;
    CompiledMap map(d, {2.0, 0.0});
    ChartPoint p = fixed_manifold_point(d, {2.0, 0.0}, {{0.5, 0.1}, {0.7, 0.0}, {0.4, -0.2}});
    SpectralReport r = spectral_check(jacobian_iterate(map, p, fm_iterate(d)));
    CHECK(r.nu1 / std::max(1.0, r.norm_j) < 1e-8);
    CHECK(r.rank_jd == 3);
    CHECK(r.kernel_dim == 4);
  }
  // chebyshev: D=3, expected rank 1, kernel 2 (one periodic label)
  {
    const GluingData& d = catalog("chebyshev").data;
    CompiledMap map(d, {1.5, 0.0});
    ChartPoint p = fixed_manifold_point(d, {1.5, 0.0}, {{0.6, 0.1}});
    SpectralReport r = spectral_check(jacobian_iterate(map, p, fm_iterate(d)));
    CHECK(r.nu1 / std::max(1.0, r.norm_j) < 1e-8);
    CHECK(r.rank_jd == 1);
    CHECK(r.kernel_dim == 2);
  }
}

TEST_CASE("contraction order is quadratic") {
  std::vector<double> ladder{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  {
    const GluingData& d = catalog("sierpinski").data;
    ChartPoint base = fixed_manifold_point(d, {2.0, 0.0}, {{0.5, 0.0}, {0.6, 0.0}, {0.7, 0.0}});
    ContractionFit f = contraction_order(d, {2.0, 0.0}, base, ladder, 7);
    CHECK(f.slope > 1.7);
    CHECK(f.slope < 2.3);
  }
  {
    const GluingData& d = catalog("chebyshev").data;
    ChartPoint base = fixed_manifold_point(d, {1.5, 0.0}, {{0.6, 0.0}});
    ContractionFit f = contraction_order(d, {1.5, 0.0}, base, ladder, 7);
    CHECK(f.slope > 1.7);
    CHECK(f.slope < 2.3);
  }
}

TEST_CASE("fubini-study distance is a projective metric") {
  std::vector<cplx> u{{1, 0}, {2, 0}, {3, 0}};
  std::vector<cplx> v{{2, 0}, {4, 0}, {6, 0}};  // same projective point
  CHECK(fubini_study(u, v) < 1e-12);
  std::vector<cplx> w{{1, 0}, {0, 0}, {0, 0}};
  double duw = fubini_study(u, w);
  CHECK(duw > 0);
  CHECK(duw == doctest::Approx(fubini_study(w, u)));
}

TEST_CASE("large-lambda orbit converges toward the ones-mass point") {
  auto e = catalog("chebyshev-tripod");
  double prev = 1e9;
  for (double lam : {1e2, 1e3, 1e4}) {
    OrbitSummary s =
        orbit(e.data, {lam, 0.0}, initial_numvector(e.start, {lam, 0.0}), 60);
    CHECK(s.converged);
    CHECK_FALSE(s.hit_indeterminacy);
    double final_dist = s.rows.back().dist_to_ones;
    CHECK(final_dist < prev);
    prev = final_dist;
  }
}
