#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "glupoly/errors.hpp"
#include "glupoly/gluing.hpp"
#include "glupoly/matrix.hpp"
#include "glupoly/polyengine.hpp"

namespace glupoly {

using cplx = std::complex<double>;

struct ChartBreakdown : std::runtime_error {
  explicit ChartBreakdown(const std::string& w) : std::runtime_error(w) {}
};
struct Indeterminacy : std::runtime_error {
  explicit Indeterminacy(const std::string& w) : std::runtime_error(w) {}
};

/// Homogeneous coordinates of a point of P^(2^k - 1), assignment order.
struct NumVector {
  std::vector<cplx> entries;
  cplx lambda;

  int k() const { return std::countr_zero(entries.size()); }
  double max_abs() const {
    double m = 0;
    for (const auto& e : entries) m = std::max(m, std::abs(e));
    return m;
  }
};

/// The chart (0) != 0: coords[x-1] = (x)/(0) for x = 1..2^k-1.
struct ChartPoint {
  std::vector<cplx> coords;
  cplx lambda;

  int dim() const { return static_cast<int>(coords.size()); }
  int k() const { return std::countr_zero(coords.size() + 1); }
};

/// F at a fixed lambda, compiled to explicit degree-m monomials per output.
class CompiledMap {
 public:
  CompiledMap(const GluingData& d, cplx lambda)
      : k_(d.k), m_(d.m), dim_(std::size_t{1} << d.k), lambda_(lambda) {
    if (lambda == cplx(0.0, 0.0))
      throw ValidationError("lambda = 0 refused (division by lambda powers)");
    require_valid(d);
    LocalWeightTable w = local_weights(d);
    struct ERef {
      const HyperEdge* e;
      const EdgeWeights* w;
      int root_label;
    };
    std::vector<ERef> erefs;
    for (const auto& e : d.edges) {
      auto j = d.phi_label_of(e.id);
      erefs.push_back({&e, &w.at(e.id), j ? *j : 0});
    }
    terms_.resize(dim_);
    std::vector<std::map<std::vector<int>, cplx>> acc(dim_);
    const std::size_t y_space = std::size_t{1} << (std::size_t(m_) * k_);
    for (std::size_t Y = 0; Y < y_space; ++Y) {
      std::vector<int> idx(m_);
      for (int i = 0; i < m_; ++i)
        idx[i] = int(Y >> (std::size_t(i) * k_)) & int(dim_ - 1);
      std::sort(idx.begin(), idx.end());
      auto ybits = [&](int copy, int label) {
        return unsigned(Y >> (std::size_t(copy - 1) * k_ + (label - 1)) & 1);
      };
      for (unsigned x = 0; x < dim_; ++x) {
        cplx c(1.0, 0.0);
        bool zero = false;
        for (const auto& er : erefs) {
          unsigned mb = 0;
          for (std::size_t p = 0; p < er.e->members.size(); ++p)
            mb |= ybits(er.e->members[p], er.e->label) << p;
          int rb = er.root_label ? int(x >> (er.root_label - 1) & 1) : 0;
          const Polynomial& f = er.w->at(mb, rb);
          if (f.is_zero()) {
            zero = true;
            break;
          }
          c *= f.eval(lambda) / std::pow(lambda, double(std::popcount(mb)));
        }
        if (!zero && c != cplx(0.0, 0.0)) acc[x][idx] += c;
      }
    }
    for (unsigned x = 0; x < dim_; ++x)
      for (auto& [ix, c] : acc[x]) terms_[x].push_back({c, ix});
  }

  int k() const { return k_; }
  int m() const { return m_; }
  std::size_t dim() const { return dim_; }
  cplx lambda() const { return lambda_; }

  /// Raw homogeneous evaluation, no normalization.
  std::vector<cplx> eval_raw(const std::vector<cplx>& v) const {
    std::vector<cplx> out(dim_, cplx(0.0, 0.0));
    for (unsigned x = 0; x < dim_; ++x)
      for (const auto& t : terms_[x]) {
        cplx p = t.c;
        for (int i : t.idx) p *= v[i];
        out[x] += p;
      }
    return out;
  }

  /// Partial-derivative matrix dF[x][u] at v.
  Matrix jacobian_raw(const std::vector<cplx>& v) const {
    Matrix J(static_cast<int>(dim_));
    for (unsigned x = 0; x < dim_; ++x)
      for (const auto& t : terms_[x]) {
        for (std::size_t a = 0; a < t.idx.size(); ++a) {
          if (a > 0 && t.idx[a] == t.idx[a - 1]) continue;  // merged below
          int u = t.idx[a];
          int mult = 0;
          cplx rest = t.c;
          bool taken = false;
          for (std::size_t b = 0; b < t.idx.size(); ++b) {
            if (t.idx[b] == u) {
              ++mult;
              if (!taken) {
                taken = true;
                continue;  // drop one factor of u
              }
            }
            rest *= v[t.idx[b]];
          }
          J.at(int(x), u) += double(mult) * rest;
        }
      }
    return J;
  }

 private:
  struct Term {
    cplx c;
    std::vector<int> idx;  // sorted multiset of m input indices
  };
  int k_, m_;
  std::size_t dim_;
  cplx lambda_;
  std::vector<std::vector<Term>> terms_;
};

/// Homogeneous image; input normalized to unit max modulus first.
/// Signals indeterminacy when the image is numerically all-zero.
inline NumVector eval_F(const CompiledMap& map, const NumVector& v) {
  double scale = v.max_abs();
  if (scale == 0.0) throw ValidationError("all-zero vector is not a point of P");
  std::vector<cplx> in(v.entries);
  for (auto& e : in) e /= scale;
  NumVector out{map.eval_raw(in), v.lambda};
  if (out.max_abs() < 1e-300)
    throw Indeterminacy("image numerically zero: indeterminacy point");
  return out;
}

inline constexpr double kChartThreshold = 1e-14;

inline ChartPoint to_chart(const NumVector& v) {
  double scale = v.max_abs();
  double denom = std::abs(v.entries[0]);
  if (denom <= kChartThreshold * scale)
    throw ChartBreakdown("chart (0) != 0 breaks down: |(0)| = " +
                         std::to_string(denom));
  ChartPoint p;
  p.lambda = v.lambda;
  p.coords.resize(v.entries.size() - 1);
  for (std::size_t x = 1; x < v.entries.size(); ++x)
    p.coords[x - 1] = v.entries[x] / v.entries[0];
  return p;
}

inline NumVector lift(const ChartPoint& p) {
  NumVector v;
  v.lambda = p.lambda;
  v.entries.resize(p.coords.size() + 1);
  v.entries[0] = 1.0;
  for (std::size_t i = 0; i < p.coords.size(); ++i) v.entries[i + 1] = p.coords[i];
  return v;
}

inline ChartPoint step_chart(const CompiledMap& map, const ChartPoint& p) {
  return to_chart(eval_F(map, lift(p)));
}

/// Point of the invariant manifold M_e from its free coordinates [e_j].
inline ChartPoint manifold_point(const std::vector<cplx>& free_coords,
                                 cplx lambda) {
  int k = static_cast<int>(free_coords.size());
  ChartPoint p;
  p.lambda = lambda;
  p.coords.resize((std::size_t{1} << k) - 1);
  for (unsigned x = 1; x < (1u << k); ++x) {
    cplx prod(1.0, 0.0);
    for (int j = 0; j < k; ++j)
      if (x >> j & 1) prod *= free_coords[j];
    p.coords[x - 1] = prod;
  }
  return p;
}

/// Max defect of the product relations [x] = prod [e_j], normalized by
/// 1 + the largest coordinate modulus.
inline double manifold_residual(const ChartPoint& p) {
  int k = p.k();
  double maxc = 0;
  for (const auto& c : p.coords) maxc = std::max(maxc, std::abs(c));
  double res = 0;
  for (unsigned x = 1; x < (1u << k); ++x) {
    if (std::popcount(x) < 2) continue;
    cplx prod(1.0, 0.0);
    for (int j = 0; j < k; ++j)
      if (x >> j & 1) prod *= p.coords[(1u << j) - 1];
    res = std::max(res, std::abs(p.coords[x - 1] - prod));
  }
  return res / (1.0 + maxc);
}

/// A point of the periodic submanifold M_0: periodic labels take the given
/// free values, the rest are pushed forward by preperiod chart steps.
inline ChartPoint fixed_manifold_point(const GluingData& d, cplx lambda,
                                       const std::vector<cplx>& free_values) {
  Classification cls = classify(d);
  if (!cls.stable)
    throw ValidationError("fixed_manifold_point requires stable gluing data");
  LabelDynamics ld = label_dynamics(d);
  if (free_values.size() != ld.periodic.size())
    throw ValidationError("need one free value per periodic label");
  std::vector<cplx> e(d.k, cplx(1.0, 0.0));
  for (std::size_t i = 0; i < ld.periodic.size(); ++i)
    e[ld.periodic[i] - 1] = free_values[i];
  ChartPoint p = manifold_point(e, lambda);
  CompiledMap map(d, lambda);
  for (int s = 0; s < ld.preperiod; ++s) p = step_chart(map, p);
  return p;
}

/// Analytic Jacobian of the chart map at p (quotient rule over the
/// homogeneous polynomials; no finite differences).
inline Matrix jacobian_chart(const CompiledMap& map, const ChartPoint& p) {
  NumVector w = lift(p);
  std::vector<cplx> Fv = map.eval_raw(w.entries);
  if (std::abs(Fv[0]) <= kChartThreshold * map.dim())
    throw ChartBreakdown("chart breaks down at the image");
  Matrix dF = map.jacobian_raw(w.entries);
  int D = static_cast<int>(map.dim()) - 1;
  Matrix J(D);
  cplx f0 = Fv[0];
  for (int x = 1; x <= D; ++x)
    for (int u = 1; u <= D; ++u)
      J.at(x - 1, u - 1) = (dF.at(x, u) * f0 - Fv[x] * dF.at(0, u)) / (f0 * f0);
  return J;
}

/// Jacobian of the p-th iterate by the chain rule along the chart orbit.
inline Matrix jacobian_iterate(const CompiledMap& map, ChartPoint p, int iters) {
  Matrix J = Matrix::identity(static_cast<int>(map.dim()) - 1);
  for (int s = 0; s < iters; ++s) {
    J = jacobian_chart(map, p) * J;
    p = step_chart(map, p);
  }
  return J;
}

struct SpectralReport {
  double nu1 = 0;        // ||J^D (J - I)^D||, ~0 when spectrum is {0,1}
  int rank_jd = 0;       // rank of J^D, expected k0
  int kernel_dim = 0;    // kernel dimension of J itself
  double norm_j = 0;
};

inline SpectralReport spectral_check(const Matrix& J, double pivot_rel = 1e-8) {
  const int D = J.n;
  SpectralReport r;
  r.norm_j = J.frobenius();
  Matrix JD = J.pow(D);
  Matrix N = (J - Matrix::identity(D)).pow(D);
  r.nu1 = (JD * N).frobenius();
  r.rank_jd = JD.rank(pivot_rel * std::max(JD.frobenius(), 1e-300));
  r.kernel_dim = D - J.rank(pivot_rel * std::max(r.norm_j, 1e-300));
  return r;
}

/// Iterate p <= 2k after which (FM1)-(FM4) hold: every label lands on the
/// periodic set, Lambda^p fixes periodic labels, and the collision witness
/// is reached.
inline int fm_iterate(const GluingData& d) {
  LabelDynamics ld = label_dynamics(d);
  CollisionResult col = collision_fixed_point(d);
  if (!col.expanding) throw ValidationError("fm_iterate requires expanding data");
  auto lam_pow = [&](int j, int p) {
    for (int s = 0; s < p; ++s) j = ld.lambda_map[j - 1];
    return j;
  };
  for (int p = 1; p <= 2 * d.k; ++p) {
    if (p < col.witness_n) continue;
    bool ok = true;
    for (int j = 1; j <= d.k && ok; ++j)
      if (!std::binary_search(ld.periodic.begin(), ld.periodic.end(), lam_pow(j, p)))
        ok = false;
    for (int j : ld.periodic)
      if (lam_pow(j, p) != j) ok = false;
    if (ok) return p;
  }
  throw ValidationError("no FM-normalizing iterate found up to 2k");
}

struct ContractionFit {
  double slope = 0;
  int points_used = 0;
};

/// Slope of log(residual after) vs log(residual before) under off-manifold
/// perturbations; expected ~2 for expanding data at generic lambda.
inline ContractionFit contraction_order(const GluingData& d, cplx lambda,
                                        const ChartPoint& base,
                                        const std::vector<double>& eps_ladder,
                                        std::uint64_t seed) {
  CompiledMap map(d, lambda);
  int p = fm_iterate(d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> dir(base.coords.size());
  double norm = 0;
  for (auto& c : dir) {
    c = cplx(gauss(rng), gauss(rng));
    norm += std::norm(c);
  }
  norm = std::sqrt(norm);
  for (auto& c : dir) c /= norm;

  std::vector<std::pair<double, double>> pts;
  for (double eps : eps_ladder) {
    ChartPoint q = base;
    for (std::size_t i = 0; i < q.coords.size(); ++i) q.coords[i] += eps * dir[i];
    double rin = manifold_residual(q);
    for (int s = 0; s < p; ++s) q = step_chart(map, q);
    double rout = manifold_residual(q);
    if (rin < 1e-14 || rout < 1e-14) continue;  // underflowed the fit window
    pts.emplace_back(std::log(rin), std::log(rout));
  }
  if (pts.size() < 3)
    throw ValidationError("fewer than 3 usable perturbation sizes for the fit");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = double(pts.size());
  ContractionFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.points_used = static_cast<int>(pts.size());
  return fit;
}

/// Coordinates of Eq-style rescaling: entry (x) multiplied by lambda^{-||x||}.
inline NumVector rescale(const NumVector& v) {
  if (v.lambda == cplx(0.0, 0.0)) throw ValidationError("lambda = 0 refused");
  NumVector out = v;
  for (std::size_t x = 0; x < out.entries.size(); ++x)
    out.entries[x] *= std::pow(v.lambda, -double(std::popcount(x)));
  return out;
}

inline NumVector unrescale(const NumVector& v) {
  if (v.lambda == cplx(0.0, 0.0)) throw ValidationError("lambda = 0 refused");
  NumVector out = v;
  for (std::size_t x = 0; x < out.entries.size(); ++x)
    out.entries[x] *= std::pow(v.lambda, double(std::popcount(x)));
  return out;
}

/// Fubini-Study distance on projective space: symmetric, <= pi/2,
/// zero iff the coordinates are proportional.
inline double fubini_study(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  cplx inner(0.0, 0.0);
  double nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    inner += std::conj(u[i]) * v[i];
    nu += std::norm(u[i]);
    nv += std::norm(v[i]);
  }
  double c = std::abs(inner) / std::sqrt(nu * nv);
  return std::acos(std::min(1.0, c));
}

/// Starting value z_0(lambda): the initial conditioned polynomials
/// evaluated at lambda.
inline NumVector initial_numvector(const MarkedGraph& g0, cplx lambda,
                                   int brute_limit = oracle::kDefaultVertexLimit) {
  PolyVector pv = initial_vector(g0, brute_limit);
  NumVector v;
  v.lambda = lambda;
  for (const auto& e : pv.entries) v.entries.push_back(e.eval(lambda));
  return v;
}

struct OrbitRow {
  int iter = 0;
  std::optional<double> residual;  // manifold residual where the chart is valid
  double step_distance = 0;        // FS distance to the previous iterate
  double dist_to_ones = 0;         // FS distance to the mass-on-(1..1) point
};

struct OrbitSummary {
  std::vector<OrbitRow> rows;
  bool converged = false;       // period-fold step distance < 1e-10
  bool hit_indeterminacy = false;
  int period = 1;
};

/// Renormalized iteration of F-hat with convergence and residual tracking.
inline OrbitSummary orbit(const GluingData& d, cplx lambda,
                          const NumVector& start, int n_max) {
  CompiledMap map(d, lambda);
  LabelDynamics ld = label_dynamics(d);
  OrbitSummary s;
  s.period = ld.period;

  std::vector<cplx> ones_mass(map.dim(), cplx(0.0, 0.0));
  ones_mass.back() = 1.0;

  auto normalized = [](NumVector v) {
    double m = v.max_abs();
    for (auto& e : v.entries) e /= m;
    return v;
  };

  std::vector<NumVector> history;
  NumVector z = normalized(start);
  history.push_back(z);
  for (int it = 1; it <= n_max; ++it) {
    NumVector next;
    try {
      next = normalized(eval_F(map, z));
    } catch (const Indeterminacy&) {
      s.hit_indeterminacy = true;
      break;
    }
    OrbitRow row;
    row.iter = it;
    row.step_distance = fubini_study(next.entries, z.entries);
    row.dist_to_ones = fubini_study(next.entries, ones_mass);
    try {
      row.residual = manifold_residual(to_chart(next));
    } catch (const ChartBreakdown&) {
      row.residual = std::nullopt;
    }
    history.push_back(next);
    z = next;
    s.rows.push_back(row);
    if (static_cast<int>(history.size()) > s.period) {
      double pd = fubini_study(history[history.size() - 1].entries,
                               history[history.size() - 1 - s.period].entries);
      if (pd < 1e-10) {
        s.converged = true;
        break;
      }
    }
  }
  return s;
}

}  // namespace glupoly
