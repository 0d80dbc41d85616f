#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "glupoly/errors.hpp"
#include "glupoly/expfloat.hpp"

namespace glupoly {

/// Univariate polynomial in lambda with exact integer coefficients.
/// Canonical form: trailing zeros trimmed; the zero polynomial stores
/// no coefficients and has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return constant(1); }
  static Polynomial constant(long v) {
    if (v == 0) return Polynomial();
    return Polynomial({mpz_class(v)});
  }
  /// c * lambda^p
  static Polynomial monomial(long c, std::size_t p) {
    if (c == 0) return Polynomial();
    std::vector<mpz_class> v(p + 1, mpz_class(0));
    v[p] = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  const mpz_class& coeff(std::size_t i) const {
    static const mpz_class kZero(0);
    return i < c_.size() ? c_[i] : kZero;
  }
  const std::vector<mpz_class>& coefficients() const { return c_; }

  long lowest_power() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return static_cast<long>(i);
    return -1;
  }

  bool nonnegative() const {
    for (const auto& c : c_)
      if (c < 0) return false;
    return true;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::size_t na = a.c_.size(), nb = b.c_.size();
    // Kronecker substitution pays off once schoolbook cost is noticeable;
    // it reduces the product to one GMP integer multiply.
    if (na >= 32 && nb >= 32 && a.nonnegative() && b.nonnegative())
      return kronecker_mul(a, b);
    std::vector<mpz_class> r(na + nb - 1, mpz_class(0));
    for (std::size_t i = 0; i < na; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < nb; ++j) {
        if (b.c_[j] == 0) continue;
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// Multiply by lambda^p.
  Polynomial shifted_up(std::size_t p) const {
    if (is_zero()) return Polynomial();
    std::vector<mpz_class> r(c_.size() + p, mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i + p] = c_[i];
    return Polynomial(std::move(r));
  }

  /// Exact division by lambda^p; throws if any lower coefficient is nonzero.
  Polynomial shifted_down(std::size_t p) const {
    if (is_zero()) return Polynomial();
    if (c_.size() < p) throw InternalError("inexact division by lambda power");
    for (std::size_t i = 0; i < p; ++i)
      if (c_[i] != 0) throw InternalError("inexact division by lambda power");
    return Polynomial(
        std::vector<mpz_class>(c_.begin() + static_cast<long>(p), c_.end()));
  }

  /// Derivative (used by the root finder's exact-coefficient path).
  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<mpz_class> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(r));
  }

  /// Horner evaluation with extended exponent range.
  ExpComplex eval_exp(std::complex<double> z) const {
    ExpComplex acc;
    ExpComplex ez(z);
    for (std::size_t i = c_.size(); i-- > 0;)
      acc = acc * ez + coeff_exp(c_[i]);
    return acc;
  }

  std::complex<double> eval(std::complex<double> z) const {
    return eval_exp(z).to_complex();
  }

  /// Majorant sum(|c_i| |z|^i); denominator of the backward-error residual.
  ExpComplex majorant_exp(double abs_z) const {
    ExpComplex acc;
    ExpComplex az(std::complex<double>(abs_z, 0.0));
    for (std::size_t i = c_.size(); i-- > 0;) {
      ExpComplex c = coeff_exp(c_[i]);
      c.mant = std::complex<double>(std::abs(c.mant), 0.0);
      acc = acc * az + c;
    }
    return acc;
  }

  static ExpComplex coeff_exp(const mpz_class& c) {
    if (c == 0) return ExpComplex();
    long e;
    double d = mpz_get_d_2exp(&e, c.get_mpz_t());
    return ExpComplex(std::complex<double>(d, 0.0), e);
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c_ == b.c_;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0)
        os << c_[i].get_str();
      else if (c_[i] == 1)
        os << "L^" << i;
      else
        os << c_[i].get_str() << " L^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  static Polynomial kronecker_mul(const Polynomial& a, const Polynomial& b) {
    std::size_t na = a.c_.size(), nb = b.c_.size();
    std::size_t bits_a = 0, bits_b = 0;
    for (const auto& c : a.c_) bits_a = std::max(bits_a, mpz_sizeinbase(c.get_mpz_t(), 2));
    for (const auto& c : b.c_) bits_b = std::max(bits_b, mpz_sizeinbase(c.get_mpz_t(), 2));
    std::size_t slot = bits_a + bits_b + 64 - __builtin_clzll(std::min(na, nb)) + 1;
    mpz_class pa = pack(a.c_, slot), pb = pack(b.c_, slot);
    mpz_class prod = pa * pb;
    std::vector<mpz_class> r(na + nb - 1);
    mpz_class rest = prod, lo;
    for (std::size_t i = 0; i < r.size(); ++i) {
      mpz_fdiv_r_2exp(lo.get_mpz_t(), rest.get_mpz_t(), slot);
      r[i] = lo;
      mpz_fdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), slot);
    }
    if (rest != 0) throw InternalError("kronecker unpack leftover");
    return Polynomial(std::move(r));
  }

  static mpz_class pack(const std::vector<mpz_class>& c, std::size_t slot) {
    mpz_class acc(0);
    for (std::size_t i = c.size(); i-- > 0;) {
      mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), slot);
      acc += c[i];
    }
    return acc;
  }

  std::vector<mpz_class> c_;
};

}  // namespace glupoly
