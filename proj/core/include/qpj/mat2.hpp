#pragma once

#include <complex>
#include <utility>

#include "qpj/torus.hpp"

namespace qpj {

// 2x2 complex matrix, row-major [[a, b], [c, d]].
struct Mat2 {
  cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  // Throws std::invalid_argument if an entry is NaN or infinite.
  static Mat2 checked(cplx a, cplx b, cplx c, cplx d);

  cplx det() const { return a * d - b * c; }
  bool is_finite() const;
  bool is_zero() const { return a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }
  Mat2 operator/(cplx s) const { return {a / s, b / s, c / s, d / s}; }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// Singular values (sigma1 >= sigma2 >= 0).
std::pair<double, double> singular_values(const Mat2& m);

// Operator norm, the largest singular value. The norm used for all cocycle products.
double op_norm(const Mat2& m);

// Apply to a column vector.
inline std::pair<cplx, cplx> apply(const Mat2& m, cplx x, cplx y) {
  return {m.a * x + m.b * y, m.c * x + m.d * y};
}

// Unit right singular vector for the smallest singular value.
std::pair<cplx, cplx> least_singular_direction(const Mat2& m);

}  // namespace qpj
