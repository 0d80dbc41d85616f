#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <chrono>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "glupoly/errors.hpp"
#include "glupoly/expfloat.hpp"
#include "glupoly/polyengine.hpp"
#include "glupoly/polynomial.hpp"

namespace glupoly {

namespace detail {

/// Complex arithmetic over GMP floats; only what the Newton polish needs.
struct MpfC {
  mpf_class re, im;
  MpfC(unsigned prec) : re(0, prec), im(0, prec) {}
};

inline void mpfc_mul(MpfC& out, const MpfC& a, const MpfC& b) {
  mpf_class r = a.re * b.re - a.im * b.im;
  mpf_class i = a.re * b.im + a.im * b.re;
  out.re = r;
  out.im = i;
}

/// Scopes the gmpxx default precision so expression temporaries inherit it.
struct PrecisionScope {
  mp_bitcnt_t saved;
  explicit PrecisionScope(mp_bitcnt_t prec) : saved(mpf_get_default_prec()) {
    mpf_set_default_prec(prec);
  }
  ~PrecisionScope() { mpf_set_default_prec(saved); }
};

/// One Newton step p/p' evaluated in extended precision; double-precision
/// Horner is pure noise deep inside cancellation zones of high-degree
/// polynomials with huge coefficients, this is the escape hatch.
/// Returns false at a critical point; log2_p reports log2|p(z)|.
inline bool newton_step_mpf(const std::vector<mpf_class>& cf, unsigned prec,
                            std::complex<double> z, std::complex<double>& N,
                            double& log2_p) {
  PrecisionScope scope(prec);
  MpfC p(prec), dp(prec), zz(prec), t(prec);
  zz.re = z.real();
  zz.im = z.imag();
  for (std::size_t i = cf.size(); i-- > 0;) {
    mpfc_mul(t, dp, zz);
    dp.re = t.re + p.re;
    dp.im = t.im + p.im;
    mpfc_mul(t, p, zz);
    p.re = t.re + cf[i];
    p.im = t.im;
  }
  mpf_class p2 = p.re * p.re + p.im * p.im;
  if (p2 == 0) {
    log2_p = -std::numeric_limits<double>::infinity();
    N = {0.0, 0.0};
    return true;
  }
  long e;
  double m = mpf_get_d_2exp(&e, p2.get_mpf_t());
  log2_p = 0.5 * (std::log2(m) + double(e));
  mpf_class den = dp.re * dp.re + dp.im * dp.im;
  if (den == 0) return false;
  mpf_class nr = (p.re * dp.re + p.im * dp.im) / den;
  mpf_class ni = (p.im * dp.re - p.re * dp.im) / den;
  N = {nr.get_d(), ni.get_d()};
  return std::isfinite(N.real()) && std::isfinite(N.imag());
}

/// Offset to the nearer root of the local quadratic model
/// p + p'·delta + p''/2·delta^2 = 0, evaluated in extended precision.
/// Newton from a (near-)real iterate of a real polynomial can never leave
/// the axis, so it stalls below conjugate root pairs; the quadratic model
/// jumps straight onto either pair member.
inline bool quad_step_mpf(const std::vector<mpf_class>& cf, unsigned prec,
                          std::complex<double> z,
                          std::complex<double>& delta) {
  PrecisionScope scope(prec);
  MpfC p(prec), dp(prec), dd(prec), zz(prec), t(prec);
  zz.re = z.real();
  zz.im = z.imag();
  for (std::size_t i = cf.size(); i-- > 0;) {
    mpfc_mul(t, dd, zz);
    dd.re = t.re + 2 * dp.re;
    dd.im = t.im + 2 * dp.im;
    mpfc_mul(t, dp, zz);
    dp.re = t.re + p.re;
    dp.im = t.im + p.im;
    mpfc_mul(t, p, zz);
    p.re = t.re + cf[i];
    p.im = t.im;
  }
  mpf_class den = dd.re * dd.re + dd.im * dd.im;
  if (den == 0) return false;
  std::complex<double> u(mpf_class((dp.re * dd.re + dp.im * dd.im) / den).get_d(),
                         mpf_class((dp.im * dd.re - dp.re * dd.im) / den).get_d());
  std::complex<double> v(mpf_class((p.re * dd.re + p.im * dd.im) / den).get_d(),
                         mpf_class((p.im * dd.re - p.re * dd.im) / den).get_d());
  std::complex<double> s = std::sqrt(u * u - 2.0 * v);
  std::complex<double> d1 = -u + s, d2 = -u - s;
  delta = std::abs(d1) < std::abs(d2) ? d1 : d2;
  return std::isfinite(delta.real()) && std::isfinite(delta.imag());
}

/// Initial guesses on circles whose radii follow the upper convex hull of
/// (i, log2|c_i|) (Newton-polygon estimates of the root moduli). A plain
/// Cauchy-bound circle stalls badly here: these polynomials have coefficient
/// ratios spanning thousands of binary orders of magnitude.
inline std::vector<std::complex<double>> initial_guesses(
    const std::vector<double>& log2c, std::uint64_t seed) {
  int d = static_cast<int>(log2c.size()) - 1;
  std::vector<int> hull;  // indices of upper-hull vertices, increasing
  for (int i = 0; i <= d; ++i) {
    if (std::isinf(log2c[i])) continue;
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      // keep hull upper-convex: drop b if it lies below segment a-i
      if ((log2c[b] - log2c[a]) * (i - a) <= (log2c[i] - log2c[a]) * (b - a))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
  std::vector<std::complex<double>> z;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    int i1 = hull[s], i2 = hull[s + 1];
    double log2r = (log2c[i1] - log2c[i2]) / double(i2 - i1);
    double r = std::exp2(std::clamp(log2r, -300.0, 300.0));
    int cnt = i2 - i1;
    double phase = uni(rng);
    for (int t = 0; t < cnt; ++t) {
      double ang = phase + 2.0 * M_PI * (t + 0.25) / cnt + 0.39 * double(s);
      z.emplace_back(r * std::cos(ang), r * std::sin(ang));
    }
  }
  return z;
}

/// Complex GMP float; temporaries inherit the scoped default precision.
struct MpfCx {
  mpf_class re{0}, im{0};
  bool is_zero() const { return re == 0 && im == 0; }
  double log2_abs2() const {  // log2(re^2 + im^2); -inf at zero
    mpf_class n = re * re + im * im;
    if (n == 0) return -std::numeric_limits<double>::infinity();
    long e;
    double m = mpf_get_d_2exp(&e, n.get_mpf_t());
    return std::log2(m) + double(e);
  }
};

/// Truncated Taylor jet in lambda: value plus first `Order` derivatives.
template <int Order>
struct MpfJet {
  MpfCx v, d1, d2;
};

/// Raw complex product into o (o must not alias a or b); t is two scratch
/// floats. Explicit mpf calls keep the hot recursion walk free of the
/// per-operation temporaries gmpxx expressions would allocate.
inline void cmul_raw(mpf_class* o, const mpf_class* a, const mpf_class* b,
                     mpf_class* t) {
  mpf_mul(t[0].get_mpf_t(), a[0].get_mpf_t(), b[0].get_mpf_t());
  mpf_mul(t[1].get_mpf_t(), a[1].get_mpf_t(), b[1].get_mpf_t());
  mpf_sub(o[0].get_mpf_t(), t[0].get_mpf_t(), t[1].get_mpf_t());
  mpf_mul(t[0].get_mpf_t(), a[0].get_mpf_t(), b[1].get_mpf_t());
  mpf_mul(t[1].get_mpf_t(), a[1].get_mpf_t(), b[0].get_mpf_t());
  mpf_add(o[1].get_mpf_t(), t[0].get_mpf_t(), t[1].get_mpf_t());
}

/// Jets as flat arrays of 2*(Order+1) floats: v.re, v.im, d1.re, d1.im, ...
/// Product via the Leibniz rule; o must not alias a or b; t holds 4 scratch.
template <int Order>
inline void jmul_raw(mpf_class* o, const mpf_class* a, const mpf_class* b,
                     mpf_class* t) {
  cmul_raw(o, a, b, t);
  cmul_raw(o + 2, a, b + 2, t);
  cmul_raw(t + 2, a + 2, b, t);
  mpf_add(o[2].get_mpf_t(), o[2].get_mpf_t(), t[2].get_mpf_t());
  mpf_add(o[3].get_mpf_t(), o[3].get_mpf_t(), t[3].get_mpf_t());
  if constexpr (Order >= 2) {
    cmul_raw(o + 4, a, b + 4, t);
    cmul_raw(t + 2, a + 4, b, t);
    mpf_add(o[4].get_mpf_t(), o[4].get_mpf_t(), t[2].get_mpf_t());
    mpf_add(o[5].get_mpf_t(), o[5].get_mpf_t(), t[3].get_mpf_t());
    cmul_raw(t + 2, a + 2, b + 2, t);
    mpf_add(t[2].get_mpf_t(), t[2].get_mpf_t(), t[2].get_mpf_t());
    mpf_add(t[3].get_mpf_t(), t[3].get_mpf_t(), t[3].get_mpf_t());
    mpf_add(o[4].get_mpf_t(), o[4].get_mpf_t(), t[2].get_mpf_t());
    mpf_add(o[5].get_mpf_t(), o[5].get_mpf_t(), t[3].get_mpf_t());
  }
}

template <int Order>
inline void jadd_raw(mpf_class* o, const mpf_class* a) {
  for (int i = 0; i < 2 * (Order + 1); ++i)
    mpf_add(o[i].get_mpf_t(), o[i].get_mpf_t(), a[i].get_mpf_t());
}

template <int Order>
inline void jswap_raw(mpf_class* a, mpf_class* b) {
  for (int i = 0; i < 2 * (Order + 1); ++i)
    mpf_swap(a[i].get_mpf_t(), b[i].get_mpf_t());
}

template <int Order>
inline void jzero_raw(mpf_class* a) {
  for (int i = 0; i < 2 * (Order + 1); ++i) a[i] = 0;
}

}  // namespace detail

/// Evaluates the level-n total conditioned sum and its lambda-derivatives at
/// a point by running the gluing recursion on numeric jets instead of
/// coefficient vectors. The expanded coefficients span thousands of binary
/// orders of magnitude, so Horner evaluation near a root needs working
/// precision past the whole coefficient range; the recursion multiplies
/// values of commensurate size and keeps the requirement near the target
/// accuracy. Every evaluation is repeated at a second, higher precision and
/// is reported trusted only when the two agree.
class RecursionEvaluator {
 public:
  RecursionEvaluator(const GluingData& d, const PolyVector& v0, int level)
      : k_(d.k), m_(d.m), level_(level), init_(v0.entries) {
    require_valid(d);
    LocalWeightTable wt = local_weights(d);
    struct ERef {
      std::vector<std::pair<int, int>> members;  // (copy, label), 1-based
      int arity = 0;
      bool rooted = false;
      int root_label = 0;
    };
    std::vector<ERef> erefs;
    for (const auto& e : d.edges) {
      const EdgeWeights& w = wt.at(e.id);
      ERef r;
      for (int mb : e.members) r.members.emplace_back(mb, e.label);
      r.arity = w.arity;
      r.rooted = w.rooted;
      auto j = d.phi_label_of(e.id);
      r.root_label = j ? *j : 0;
      erefs.push_back(std::move(r));
      tables_.push_back(w.table);
    }
    const unsigned dim = 1u << k_;
    const std::size_t y_space = std::size_t{1} << (std::size_t(m_) * k_);
    for (std::size_t Y = 0; Y < y_space; ++Y) {
      auto ybits = [&](int copy, int label) {
        return unsigned(Y >> (std::size_t(copy - 1) * k_ + (label - 1)) & 1);
      };
      Term t;
      for (int i = 1; i <= m_; ++i)
        t.y.push_back(unsigned(Y >> (std::size_t(i - 1) * k_)) &
                      unsigned(dim - 1));
      bool base_zero = false;
      for (std::size_t e = 0; e < erefs.size(); ++e) {
        unsigned mb = 0;
        for (std::size_t p = 0; p < erefs[e].members.size(); ++p)
          mb |= ybits(erefs[e].members[p].first, erefs[e].members[p].second)
                << p;
        if (erefs[e].root_label == 0) {
          if (tables_[e][mb].is_zero()) {
            base_zero = true;
            break;
          }
          t.base.emplace_back(int(e), int(mb));
        } else {
          t.edge_mb.emplace_back(int(e), int(mb));
        }
      }
      if (base_zero) continue;
      t.alive.assign(dim, 1);
      t.rooted.assign(dim, {});
      bool any_alive = false;
      for (unsigned x = 0; x < dim; ++x) {
        for (auto [e, mb] : t.edge_mb) {
          int bit = int(x >> (erefs[e].root_label - 1) & 1);
          unsigned idx = unsigned(mb) | (unsigned(bit) << erefs[e].arity);
          if (tables_[e][idx].is_zero()) {
            t.alive[x] = 0;
            break;
          }
          t.rooted[x].emplace_back(e, int(idx));
        }
        any_alive = any_alive || t.alive[x];
      }
      if (any_alive) terms_.push_back(std::move(t));
    }
  }

  /// Newton data at z: N = p/p' and log2|p|. Returns false when the
  /// cross-check between the two precisions disagrees (caller escalates).
  bool newton(std::complex<double> z, unsigned prec, std::complex<double>& N,
              double& log2_p) const {
    if (z == std::complex<double>(0.0, 0.0)) return false;
    detail::MpfJet<1> lo, hi;
    eval_jet<1>(z, prec, lo);
    eval_jet<1>(z, prec + 192, hi);
    detail::PrecisionScope scope(prec + 192);
    if (!agree(lo.v, hi.v) || !agree(lo.d1, hi.d1)) return false;
    log2_p = 0.5 * hi.v.log2_abs2();
    if (hi.v.is_zero()) {
      N = {0.0, 0.0};
      return true;
    }
    if (hi.d1.is_zero()) return false;
    mpf_class den = hi.d1.re * hi.d1.re + hi.d1.im * hi.d1.im;
    N = {mpf_class((hi.v.re * hi.d1.re + hi.v.im * hi.d1.im) / den).get_d(),
         mpf_class((hi.v.im * hi.d1.re - hi.v.re * hi.d1.im) / den).get_d()};
    return std::isfinite(N.real()) && std::isfinite(N.imag());
  }

  /// Offset to the nearer root of the local quadratic model (see
  /// detail::quad_step_mpf); single evaluation, no cross-check.
  bool quad(std::complex<double> z, unsigned prec,
            std::complex<double>& delta) const {
    if (z == std::complex<double>(0.0, 0.0)) return false;
    detail::MpfJet<2> j;
    eval_jet<2>(z, prec, j);
    detail::PrecisionScope scope(prec);
    if (j.d2.is_zero()) return false;
    mpf_class den = j.d2.re * j.d2.re + j.d2.im * j.d2.im;
    auto ratio = [&](const detail::MpfCx& a) {
      return std::complex<double>(
          mpf_class((a.re * j.d2.re + a.im * j.d2.im) / den).get_d(),
          mpf_class((a.im * j.d2.re - a.re * j.d2.im) / den).get_d());
    };
    std::complex<double> u = ratio(j.d1), v = ratio(j.v);
    std::complex<double> s = std::sqrt(u * u - 2.0 * v);
    std::complex<double> d1 = -u + s, d2 = -u - s;
    delta = std::abs(d1) < std::abs(d2) ? d1 : d2;
    return std::isfinite(delta.real()) && std::isfinite(delta.imag());
  }

 private:
  struct Term {
    std::vector<unsigned> y;                            // copy assignments
    std::vector<std::pair<int, int>> base;              // (edge, table idx)
    std::vector<std::pair<int, int>> edge_mb;           // rooted (edge, mb)
    std::vector<std::vector<std::pair<int, int>>> rooted;  // per x
    std::vector<char> alive;                            // per x
  };

  static bool agree(const detail::MpfCx& a, const detail::MpfCx& b) {
    // relative agreement to ~2^-25; both exactly zero also agrees
    mpf_class dr = a.re - b.re, di = a.im - b.im;
    mpf_class diff = dr * dr + di * di;
    if (diff == 0) return true;
    mpf_class mag = b.re * b.re + b.im * b.im;
    return diff * mpf_class(1125899906842624.0) * mpf_class(1125899906842624.0) <=
           mag;
  }

  template <int Order>
  void eval_jet(std::complex<double> z, unsigned prec,
                detail::MpfJet<Order>& out) const {
    detail::PrecisionScope scope(prec);
    constexpr int W = 2 * (Order + 1);
    const unsigned dim = 1u << k_;
    std::size_t tab_total = 0;
    for (const auto& t : tables_) tab_total += t.size();
    // one arena holds every jet of the walk; the inner loop then runs on
    // raw in-place mpf calls with no allocation at all
    const std::size_t jets =
        std::size_t(2 + (k_ + 1)) + tab_total + 3 * dim + 3;
    std::vector<mpf_class> arena(jets * W + 6, mpf_class(0, prec));
    mpf_class* base = arena.data();
    auto jet = [&](std::size_t idx) { return base + idx * W; };
    std::size_t next = 0;
    mpf_class* lam = jet(next++);
    mpf_class* iv = jet(next++);
    mpf_class* ivpow = jet(next);
    next += std::size_t(k_) + 1;
    mpf_class* scratch = base + jets * W;  // 6 floats

    lam[0] = z.real();
    lam[1] = z.imag();
    lam[2] = 1;
    // 1/lambda as a jet: d/dl (1/l) = -1/l^2, d2(1/l) = 2/l^3
    mpf_class nrm = lam[0] * lam[0] + lam[1] * lam[1];
    iv[0] = lam[0] / nrm;
    iv[1] = -lam[1] / nrm;
    detail::cmul_raw(scratch + 2, iv, iv, scratch);
    mpf_neg(iv[2].get_mpf_t(), scratch[2].get_mpf_t());
    mpf_neg(iv[3].get_mpf_t(), scratch[3].get_mpf_t());
    if constexpr (Order >= 2) {
      detail::cmul_raw(scratch + 4, scratch + 2, iv, scratch);
      mpf_add(iv[4].get_mpf_t(), scratch[4].get_mpf_t(), scratch[4].get_mpf_t());
      mpf_add(iv[5].get_mpf_t(), scratch[5].get_mpf_t(), scratch[5].get_mpf_t());
    }
    mpf_class* tmp = jet(next++);
    ivpow[0] = 1;
    for (int j = 1; j <= k_; ++j) {
      detail::jmul_raw<Order>(tmp, jet(2 + std::size_t(j) - 1), iv, scratch);
      detail::jswap_raw<Order>(jet(2 + std::size_t(j)), tmp);
    }

    // Horner on a small exact-integer polynomial, jet-valued
    auto eval_poly = [&](const Polynomial& p, mpf_class* acc) {
      detail::jzero_raw<Order>(acc);
      const auto& c = p.coefficients();
      for (std::size_t i = c.size(); i-- > 0;) {
        detail::jmul_raw<Order>(tmp, acc, lam, scratch);
        detail::jswap_raw<Order>(acc, tmp);
        if (c[i] != 0) {
          scratch[0] = c[i];
          mpf_add(acc[0].get_mpf_t(), acc[0].get_mpf_t(),
                  scratch[0].get_mpf_t());
        }
      }
    };

    std::vector<mpf_class*> tab(tables_.size());
    for (std::size_t e = 0; e < tables_.size(); ++e) {
      tab[e] = jet(next);
      for (const auto& p : tables_[e]) eval_poly(p, jet(next++));
    }
    mpf_class* val = jet(next);
    next += dim;
    for (unsigned y = 0; y < dim; ++y) eval_poly(init_[y], val + y * W);
    mpf_class* q = jet(next);
    next += dim;
    mpf_class* nx = jet(next);
    next += dim;
    mpf_class* cp = jet(next++);
    mpf_class* f = jet(next++);

    for (int s = 0; s < level_; ++s) {
      for (unsigned y = 0; y < dim; ++y) {
        detail::jmul_raw<Order>(
            q + y * W, val + y * W,
            ivpow + std::size_t(std::popcount(y)) * W, scratch);
      }
      for (unsigned x = 0; x < dim; ++x) detail::jzero_raw<Order>(nx + x * W);
      for (const Term& t : terms_) {
        if (m_ == 1) {
          detail::jzero_raw<Order>(cp);
          detail::jadd_raw<Order>(cp, q + t.y[0] * W);
        } else {
          detail::jmul_raw<Order>(cp, q + t.y[0] * W, q + t.y[1] * W, scratch);
        }
        for (int i = 2; i < m_; ++i) {
          detail::jmul_raw<Order>(tmp, cp, q + t.y[std::size_t(i)] * W,
                                  scratch);
          detail::jswap_raw<Order>(cp, tmp);
        }
        for (auto [e, idx] : t.base) {
          detail::jmul_raw<Order>(
              tmp, cp, tab[std::size_t(e)] + std::size_t(idx) * W, scratch);
          detail::jswap_raw<Order>(cp, tmp);
        }
        for (unsigned x = 0; x < dim; ++x) {
          if (!t.alive[x]) continue;
          const auto& slots = t.rooted[x];
          mpf_class* term = cp;
          for (std::size_t r = 0; r < slots.size(); ++r) {
            detail::jmul_raw<Order>(
                f, term,
                tab[std::size_t(slots[r].first)] +
                    std::size_t(slots[r].second) * W,
                scratch);
            detail::jswap_raw<Order>(f, tmp);
            term = tmp;
          }
          detail::jadd_raw<Order>(nx + x * W, term);
        }
      }
      for (unsigned y = 0; y < dim; ++y)
        detail::jswap_raw<Order>(val + y * W, nx + y * W);
    }
    detail::jzero_raw<Order>(cp);
    for (unsigned x = 0; x < dim; ++x) detail::jadd_raw<Order>(cp, val + x * W);
    out.v.re = cp[0];
    out.v.im = cp[1];
    out.d1.re = cp[2];
    out.d1.im = cp[3];
    if constexpr (Order >= 2) {
      out.d2.re = cp[4];
      out.d2.im = cp[5];
    }
  }

  int k_, m_, level_;
  std::vector<Polynomial> init_;
  std::vector<std::vector<Polynomial>> tables_;
  std::vector<Term> terms_;
};

struct RootResult {
  std::vector<std::complex<double>> roots;
  std::vector<double> residuals;  // backward-error style, per root
};

inline constexpr double kRootResidualTol = 1e-8;

/// Aberth-Ehrlich simultaneous iteration with exact-coefficient evaluation
/// in extended-exponent floats; the zero root is deflated exactly first,
/// and stubborn roots fall back to a GMP-float Newton polish on a per-root
/// precision ladder. `hints` (typically the previous atlas level's roots,
/// which accumulate on the same limit set) seed the iteration and cut the
/// sweep count by an order of magnitude at high degree.
inline RootResult find_roots(
    const Polynomial& p, std::uint64_t seed = 1,
    double residual_tol = kRootResidualTol,
    const std::vector<std::complex<double>>* hints = nullptr,
    const RecursionEvaluator* rec = nullptr) {
  if (p.is_zero()) throw ValidationError("zero polynomial has no root set");
  RootResult result;
  long low = p.lowest_power();
  if (low != 0) rec = nullptr;  // the evaluator sees the undeflated function
  for (long i = 0; i < low; ++i) {
    result.roots.emplace_back(0.0, 0.0);
    result.residuals.push_back(0.0);
  }
  Polynomial q = p.shifted_down(std::size_t(low));
  int d = static_cast<int>(q.degree());
  if (d == 0) return result;

  const auto& c = q.coefficients();
  std::vector<std::complex<double>> cm(c.size());
  std::vector<std::int64_t> cex(c.size());
  std::vector<double> log2c(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    ExpComplex e = Polynomial::coeff_exp(c[i]);
    cm[i] = e.mant;
    cex[i] = e.exp2;
    log2c[i] = e.log2_abs();
  }

  // fused Horner for p and p' on raw mantissa/exponent pairs; mantissas are
  // renormalized lazily, which is several times cheaper than per-operation
  // normalization and is the hot loop of the whole module
  auto eval_pd = [&](std::complex<double> zz, ExpComplex& p, ExpComplex& dp) {
    ExpComplex ez(zz);
    std::complex<double> zm = ez.mant;
    std::int64_t zex = ez.exp2;
    std::complex<double> pm(0.0, 0.0), dm(0.0, 0.0);
    std::int64_t pe = 0, de = 0;
    bool pz = true, dz = true;
    // mantissas stay within 2^+-31 so the ldexp shifts below cannot overflow
    auto renorm = [](std::complex<double>& m, std::int64_t& e) {
      double a = std::abs(m.real()) + std::abs(m.imag());
      if (a > 1e9 || (a < 1e-9 && a != 0.0)) {
        int s;
        std::frexp(a, &s);
        m = {std::ldexp(m.real(), -s), std::ldexp(m.imag(), -s)};
        e += s;
      }
    };
    for (std::size_t i = c.size(); i-- > 0;) {
      if (!dz) {
        dm *= zm;
        de += zex;
      }
      if (!pz) {
        std::int64_t dd = pe - de;
        if (dz || dd > 900) {
          dm = pm;
          de = pe;
          dz = pz;
        } else if (dd > -900) {
          dm += std::complex<double>(std::ldexp(pm.real(), int(dd)),
                                     std::ldexp(pm.imag(), int(dd)));
        }
        dz = dz && pz;
      }
      if (!pz) {
        pm *= zm;
        pe += zex;
      }
      if (cm[i] != std::complex<double>(0.0, 0.0)) {
        std::int64_t dd = cex[i] - pe;
        if (pz || dd > 900) {
          pm = cm[i];
          pe = cex[i];
          pz = false;
        } else if (dd > -900) {
          pm += std::complex<double>(std::ldexp(cm[i].real(), int(dd)),
                                     std::ldexp(cm[i].imag(), int(dd)));
        }
      }
      renorm(pm, pe);
      renorm(dm, de);
    }
    p = pz ? ExpComplex() : ExpComplex(pm, pe);
    dp = dz ? ExpComplex() : ExpComplex(dm, de);
  };
  auto residual = [&](std::complex<double> r) {
    ExpComplex pv, dv;
    eval_pd(r, pv, dv);
    if (pv.is_zero()) return 0.0;
    return std::abs(exp_ratio(pv, q.majorant_exp(std::abs(r))));
  };
  // a root is done when Horner cannot distinguish p(z) from zero in double
  // precision (backward-error stopping rule); step-size tests alone freeze
  // too early when the Aberth correction denominator inflates near clusters
  const double freeze_res =
      std::max(1e-15, 8.0 * d * std::numeric_limits<double>::epsilon());

  std::mt19937_64 seed_rng(seed);
  std::vector<std::complex<double>> z;
  const bool have_hints =
      hints != nullptr &&
      std::any_of(hints->begin(), hints->end(), [](std::complex<double> h) {
        return h != std::complex<double>(0.0, 0.0);
      });
  if (have_hints) {
    std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
    while (int(z.size()) < d)
      for (std::complex<double> h : *hints) {
        if (int(z.size()) >= d) break;
        if (h == std::complex<double>(0.0, 0.0)) continue;
        double ang = uni(seed_rng);
        z.push_back(h * (1.0 + 1e-3 * std::complex<double>(std::cos(ang),
                                                           std::sin(ang))));
      }
  }
  if (int(z.size()) < d) {
    auto fresh = detail::initial_guesses(log2c, seed);
    z.insert(z.end(), fresh.begin(), fresh.end());
    z.resize(std::size_t(d));
  }
  std::vector<char> frozen(d, 0);
  auto sweep_until_frozen = [&](int max_iters) {
    for (int it = 0; it < max_iters; ++it) {
      bool all = true;
      for (int i = 0; i < d; ++i) {
        if (frozen[i]) continue;
        ExpComplex pv, dv;
        eval_pd(z[i], pv, dv);
        if (pv.is_zero()) {
          frozen[i] = 1;
          continue;
        }
        std::complex<double> newton = exp_ratio(pv, dv);
        std::complex<double> s(0.0, 0.0);
        for (int j = 0; j < d; ++j)
          if (j != i) s += 1.0 / (z[i] - z[j]);
        std::complex<double> w = newton / (1.0 - newton * s);
        z[i] -= w;
        bool small_step = std::abs(w) < 1e-11 * (1.0 + std::abs(z[i])) ||
                          std::abs(newton) < 1e-11 * (1.0 + std::abs(z[i]));
        if (small_step && residual(z[i]) <= freeze_res)
          frozen[i] = 1;
        else
          all = false;
      }
      if (all) return;
    }
  };
  const bool dbg = std::getenv("GLUPOLY_DEBUG_ROOTS") != nullptr;
  auto tick = std::chrono::steady_clock::now();
  auto lap = [&](const char* what) {
    if (!dbg) return;
    auto now = std::chrono::steady_clock::now();
    std::fprintf(stderr, "[roots] %s: %.2fs\n", what,
                 std::chrono::duration<double>(now - tick).count());
    tick = now;
  };
  sweep_until_frozen(d >= 600 ? 60 : 200);
  lap("double phase");

  // --- extended-precision polish and forward certification ---
  // Backward error is the wrong final certificate at high degree: these
  // coefficients span hundreds of bits, so points with backward error below
  // any fixed tolerance (pseudozeros) fill regions far outside the true
  // zero set, and a parked approximation out there would fake a large
  // "root" and corrupt the max-modulus analytics. Every approximation is
  // therefore polished with 320-bit Newton steps until the step itself is
  // negligible; a tiny Newton step at a simple root places a true root
  // within roughly the same distance, which is a forward certificate. The
  // Aberth repulsion from the other approximations is kept during polishing
  // so an index pushed off its root is steered toward the uncovered one.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  // the coefficients are exact integers; store them once with full width so
  // only the working precision of the evaluation ever has to move
  std::size_t max_bits = 0;
  for (const auto& ci : c)
    if (ci != 0)
      max_bits = std::max(max_bits, mpz_sizeinbase(ci.get_mpz_t(), 2));
  std::vector<mpf_class> cf;
  cf.reserve(c.size());
  for (const auto& ci : c)
    cf.emplace_back(ci, unsigned(std::max<std::size_t>(64, max_bits + 32)));
  // Near accumulation points |p| dips exponentially deep below the
  // coefficient scale, so no fixed precision is safe: a computed value is
  // trusted only when it clears the evaluation noise floor
  // majorant * 2^{-prec} * O(d). Each approximation carries its own working
  // precision and escalates it until the step is trusted; well-separated
  // roots stay cheap while cluster residents climb the ladder alone.
  const double log2d = std::log2(double(d) + 1.0);
  std::vector<unsigned> pprec(std::size_t(d), 128);
  auto newton_trusted = [&](std::complex<double> at, unsigned& prec,
                            std::complex<double>& N, double& log2_p,
                            bool allow_escalation) {
    for (int esc = 0;; ++esc) {
      bool ok;
      if (rec != nullptr) {
        ok = rec->newton(at, prec, N, log2_p);
      } else {
        ok = detail::newton_step_mpf(cf, prec, at, N, log2_p);
        if (ok && !(std::isinf(log2_p) && log2_p < 0)) {
          double log2maj = q.majorant_exp(std::abs(at)).log2_abs();
          ok = log2_p > log2maj - double(prec) + log2d + 20.0;
        }
      }
      if (ok) return true;
      if (!allow_escalation || esc >= 16) return false;
      prec += std::max<unsigned>(prec, 256);
    }
  };
  // double storage limits each position to ~eps*(1+|z|), so the certified
  // step bound sits three orders above that floor
  const double polish_tol = 1e-13;
  auto polish_one = [&](int i, bool allow_escalation) {
    double best = std::numeric_limits<double>::infinity();
    int slow = 0;
    std::complex<double> prev_newton(0.0, 0.0);
    for (int it = 0; it < 120; ++it) {
      std::complex<double> newton;
      double log2_p;
      if (!newton_trusted(z[i], pprec[i], newton, log2_p, allow_escalation))
        return false;
      double nn = std::abs(newton);
      if (nn <= polish_tol * (1.0 + std::abs(z[i]))) return true;
      std::complex<double> s(0.0, 0.0);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        std::complex<double> diff = z[i] - z[j];
        if (diff != std::complex<double>(0.0, 0.0)) s += 1.0 / diff;
      }
      std::complex<double> w = newton / (1.0 - newton * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = newton;
      // contraction onto an m-root cluster proceeds at the linear rate
      // (m-1)/m, a crawl when clusters run deep; once successive steps
      // shrink by a steady near-real ratio rho, the geometric-series limit
      // w/(1 - rho) jumps to the cluster centroid in one stroke
      if (it > 0 && prev_newton != std::complex<double>(0.0, 0.0)) {
        std::complex<double> rho = w / prev_newton;
        if (std::abs(rho) > 0.25 && std::abs(rho) < 1.0 - 1e-6 &&
            std::abs(std::arg(rho)) < 0.5) {
          std::complex<double> acc = w / (1.0 - rho);
          if (std::isfinite(acc.real()) && std::isfinite(acc.imag())) w = acc;
        }
      }
      prev_newton = w;
      z[i] -= w;
      if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag()))
        return false;
      // stagnation (typically right below a conjugate pair): jump with the
      // local quadratic model instead of the first-order step
      if (nn > 0.9 * best) {
        if (++slow >= 4) {
          std::complex<double> delta;
          bool jumped = rec != nullptr
                            ? rec->quad(z[i], pprec[i], delta)
                            : detail::quad_step_mpf(cf, pprec[i], z[i], delta);
          if (jumped) z[i] += delta;
          slow = 0;
          prev_newton = {0.0, 0.0};
        }
      } else {
        slow = 0;
        best = nn;
      }
    }
    return false;
  };
  // straight into simultaneous sweeps: solo polishing of cluster residents
  // is futile until their neighbours settle, so there is no first pass
  std::vector<char> certified(d, 0);
  int open_count = d;
  // Solo Newton crawls outside geometric root clusters (effective
  // multiplicity in the hundreds), but simultaneous Aberth resolves them:
  // the repulsion deflates the neighbours, so the cluster settles
  // collectively in a handful of extended-precision sweeps.
  std::vector<std::complex<double>> prev_w(std::size_t(d), {0.0, 0.0});
  for (int sweep = 0; sweep < 500 && open_count > 0; ++sweep) {
    for (int i = 0; i < d; ++i) {
      if (certified[i]) continue;
      std::complex<double> newton;
      double log2_p;
      if (!newton_trusted(z[i], pprec[i], newton, log2_p, true)) continue;
      if (std::abs(newton) <= polish_tol * (1.0 + std::abs(z[i]))) {
        certified[i] = 1;
        --open_count;
        continue;
      }
      std::complex<double> s(0.0, 0.0);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        std::complex<double> diff = z[i] - z[j];
        if (diff != std::complex<double>(0.0, 0.0)) s += 1.0 / diff;
      }
      std::complex<double> w = newton / (1.0 - newton * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = newton;
      // same geometric-series shortcut as in the solo polish
      if (prev_w[i] != std::complex<double>(0.0, 0.0)) {
        std::complex<double> rho = w / prev_w[i];
        if (std::abs(rho) > 0.25 && std::abs(rho) < 1.0 - 1e-6 &&
            std::abs(std::arg(rho)) < 0.5) {
          std::complex<double> acc = w / (1.0 - rho);
          if (std::isfinite(acc.real()) && std::isfinite(acc.imag())) w = acc;
        }
      }
      prev_w[i] = w;
      std::complex<double> moved = z[i] - w;
      if (std::isfinite(moved.real()) && std::isfinite(moved.imag()))
        z[i] = moved;
    }
    if (dbg)
      std::fprintf(stderr, "[roots] sweep %d leaves %d open\n", sweep,
                   open_count);
  }
  lap("aberth sweeps");
  // final fallback: fresh starts, one straggler at a time
  std::vector<int> stuck;
  for (int i = 0; i < d; ++i) {
    if (certified[i]) continue;
    if (dbg) {
      std::complex<double> N;
      double log2_p;
      newton_trusted(z[i], pprec[i], N, log2_p, true);
      double near = std::numeric_limits<double>::infinity();
      for (int j = 0; j < d; ++j)
        if (j != i) near = std::min(near, std::abs(z[i] - z[j]));
      std::fprintf(stderr,
                   "[roots] straggler %d z=(%g,%g) |N|=%g log2p=%.0f near=%g\n",
                   i, z[i].real(), z[i].imag(), std::abs(N), log2_p, near);
    }
    std::vector<std::complex<double>> cand{z[i]};
    std::vector<std::complex<double>> fresh =
        detail::initial_guesses(log2c, rng());
    std::shuffle(fresh.begin(), fresh.end(), rng);
    fresh.resize(std::min<std::size_t>(fresh.size(), 32));
    cand.insert(cand.end(), fresh.begin(), fresh.end());
    bool done = false;
    for (std::complex<double> start : cand) {
      z[i] = start;
      if (polish_one(i, true)) {
        done = true;
        break;
      }
    }
    if (!done) stuck.push_back(i);
  }
  for (int i = 0; i < d && stuck.empty(); ++i)
    if (residual(z[i]) >= residual_tol) stuck.push_back(i);
  if (!stuck.empty()) {
    std::string msg = "root finder failed to certify indices";
    for (int i : stuck) msg += " " + std::to_string(i);
    throw InternalError(msg);
  }
  // roots inside sub-double clusters legitimately collapse to one position,
  // which barely moves this sum; a wrongly doubled simple root shifts it by
  // the distance to the missing root and trips the check
  if (d >= 2) {
    std::complex<double> sum(0.0, 0.0);
    double spread = 0.0;
    for (int i = 0; i < d; ++i) {
      sum += z[i];
      spread += std::abs(z[i]);
    }
    std::complex<double> vieta =
        -exp_ratio(Polynomial::coeff_exp(c[d - 1]), Polynomial::coeff_exp(c[d]));
    if (std::abs(sum - vieta) > 1e-6 * (1.0 + spread))
      throw InternalError("root multiset failed the coefficient sum check");
  }

  std::vector<std::size_t> order(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (z[a].real() != z[b].real()) return z[a].real() < z[b].real();
    return z[a].imag() < z[b].imag();
  });
  for (std::size_t i : order) {
    result.roots.push_back(z[i]);
    result.residuals.push_back(residual(z[i]));
  }
  return result;
}

struct LevelZeros {
  int level = 0;
  long degree = 0;
  std::vector<std::complex<double>> roots;
  std::vector<double> residuals;
  double max_modulus = 0;
};

struct ZeroAtlas {
  std::vector<LevelZeros> levels;
  bool truncated = false;
};

/// Roots of the total independence polynomial for each level <= n_max.
/// Near-real roots are snapped onto the real axis.
inline ZeroAtlas atlas(const GluingData& d, const MarkedGraph& g0, int n_max,
                       std::uint64_t seed = 1,
                       long long degree_budget = kDefaultDegreeBudget) {
  SequenceResult seq = sequence(d, g0, n_max, degree_budget);
  ZeroAtlas a;
  a.truncated = seq.truncated;
  std::vector<std::complex<double>> prev_roots;
  for (const auto& v : seq.levels) {
    Polynomial total = v.total();
    LevelZeros lz;
    lz.level = v.level;
    lz.degree = total.degree();
    if (total.degree() >= 1) {
      // past a few hundred coefficients the expanded form is so stiff that
      // evaluating through the recursion is both faster and better behaved
      std::optional<RecursionEvaluator> re;
      if (total.degree() >= 200) re.emplace(d, seq.levels[0], v.level);
      RootResult rr = find_roots(total, seed + std::uint64_t(v.level),
                                 kRootResidualTol,
                                 prev_roots.empty() ? nullptr : &prev_roots,
                                 re ? &*re : nullptr);
      prev_roots = rr.roots;
      for (auto& r : rr.roots)
        if (std::abs(r.imag()) < 1e-10 * (1.0 + std::abs(r))) r = {r.real(), 0.0};
      lz.roots = std::move(rr.roots);
      lz.residuals = std::move(rr.residuals);
      for (const auto& r : lz.roots)
        lz.max_modulus = std::max(lz.max_modulus, std::abs(r));
    }
    a.levels.push_back(std::move(lz));
  }
  return a;
}

enum class BoundednessVerdict { BoundedPlateau, Growing, Inconclusive };

inline std::string to_string(BoundednessVerdict v) {
  switch (v) {
    case BoundednessVerdict::BoundedPlateau: return "bounded-plateau";
    case BoundednessVerdict::Growing: return "growing";
    default: return "inconclusive";
  }
}

/// Plateau-vs-growth heuristic on the per-level max root moduli:
/// growing when three successive ratios exceed `growth_ratio`; a plateau
/// when the last three levels stay within `plateau_factor` of the window
/// four levels earlier.
inline BoundednessVerdict boundedness_report(const ZeroAtlas& a,
                                             double plateau_factor = 1.2,
                                             double growth_ratio = 1.5) {
  const auto& L = a.levels;
  if (L.size() < 7)
    throw ValidationError("boundedness verdict needs at least 7 levels");
  for (std::size_t n = 0; n + 3 < L.size(); ++n) {
    bool grow = true;
    for (std::size_t t = n; t < n + 3; ++t)
      if (!(L[t].max_modulus > 0 &&
            L[t + 1].max_modulus >= growth_ratio * L[t].max_modulus))
        grow = false;
    if (grow) return BoundednessVerdict::Growing;
  }
  std::size_t last = L.size() - 1;
  double top = 0, base = 0;
  for (std::size_t t = last - 2; t <= last; ++t)
    top = std::max(top, L[t].max_modulus);
  for (std::size_t t = last - 6; t <= last - 4; ++t)
    base = std::max(base, L[t].max_modulus);
  if (base > 0 && top <= plateau_factor * base)
    return BoundednessVerdict::BoundedPlateau;
  return BoundednessVerdict::Inconclusive;
}

}  // namespace glupoly
