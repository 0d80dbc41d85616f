#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace glupoly {

/// Dense complex matrix just big enough for the spectral checks (D <= 2^k-1).
struct Matrix {
  int n = 0;
  std::vector<std::complex<double>> a;  // row-major

  Matrix() = default;
  explicit Matrix(int dim) : n(dim), a(std::size_t(dim) * dim, {0.0, 0.0}) {}

  std::complex<double>& at(int r, int c) { return a[std::size_t(r) * n + c]; }
  const std::complex<double>& at(int r, int c) const {
    return a[std::size_t(r) * n + c];
  }

  static Matrix identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix r(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int l = 0; l < x.n; ++l) {
        auto v = x.at(i, l);
        if (v == std::complex<double>(0.0, 0.0)) continue;
        for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(l, j);
      }
    return r;
  }

  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
  }

  Matrix pow(int e) const {
    Matrix r = identity(n);
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
  }

  double frobenius() const {
    double s = 0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
  }

  /// Numeric rank by row reduction with an absolute pivot threshold.
  int rank(double pivot_threshold) const {
    Matrix m = *this;
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
      int best = -1;
      double best_abs = pivot_threshold;
      for (int i = r; i < n; ++i)
        if (std::abs(m.at(i, c)) > best_abs) {
          best_abs = std::abs(m.at(i, c));
          best = i;
        }
      if (best < 0) continue;
      for (int j = 0; j < n; ++j) std::swap(m.at(best, j), m.at(r, j));
      for (int i = r + 1; i < n; ++i) {
        auto f = m.at(i, c) / m.at(r, c);
        for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(r, j);
      }
      ++r;
    }
    return r;
  }
};

}  // namespace glupoly
