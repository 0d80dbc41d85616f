#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace glupoly {

/// Complex number with an extended binary exponent: value = mant * 2^exp2.
/// Keeps polynomial evaluation well-defined when coefficients or powers
/// overflow the double range (coefficients here can exceed 10^1000).
struct ExpComplex {
  std::complex<double> mant{0.0, 0.0};
  std::int64_t exp2 = 0;

  ExpComplex() = default;
  ExpComplex(std::complex<double> m, std::int64_t e = 0) : mant(m), exp2(e) {
    normalize();
  }

  static ExpComplex zero() { return ExpComplex(); }

  bool is_zero() const { return mant == std::complex<double>(0.0, 0.0); }

  void normalize() {
    double a = std::max(std::abs(mant.real()), std::abs(mant.imag()));
    if (a == 0.0) {
      exp2 = 0;
      return;
    }
    int e;
    std::frexp(a, &e);  // a = f * 2^e, f in [0.5, 1)
    mant = std::complex<double>(std::ldexp(mant.real(), -e),
                                std::ldexp(mant.imag(), -e));
    exp2 += e;
  }

  friend ExpComplex operator*(const ExpComplex& a, const ExpComplex& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return ExpComplex(a.mant * b.mant, a.exp2 + b.exp2);
  }

  friend ExpComplex operator+(const ExpComplex& a, const ExpComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ExpComplex& hi = (a.exp2 >= b.exp2) ? a : b;
    const ExpComplex& lo = (a.exp2 >= b.exp2) ? b : a;
    std::int64_t d = hi.exp2 - lo.exp2;
    if (d > 1100) return hi;  // lo is below double precision of hi
    std::complex<double> m =
        hi.mant + std::complex<double>(std::ldexp(lo.mant.real(), -int(d)),
                                       std::ldexp(lo.mant.imag(), -int(d)));
    return ExpComplex(m, hi.exp2);
  }

  /// log2 of the modulus; -inf for zero.
  double log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(mant)) + double(exp2);
  }

  /// Natural log of the modulus.
  double log_abs() const { return log2_abs() * 0.6931471805599453; }

  /// Collapse to a plain double-precision complex (may over/underflow).
  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    return std::complex<double>(std::ldexp(mant.real(), int(exp2)),
                                std::ldexp(mant.imag(), int(exp2)));
  }
};

/// Ratio a/b as plain complex, computed exponent-safely.
inline std::complex<double> exp_ratio(const ExpComplex& a, const ExpComplex& b) {
  if (a.is_zero()) return {0.0, 0.0};
  std::complex<double> r = a.mant / b.mant;
  std::int64_t e = a.exp2 - b.exp2;
  return std::complex<double>(std::ldexp(r.real(), int(e)),
                              std::ldexp(r.imag(), int(e)));
}

}  // namespace glupoly
