#include "qpj/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qpj {

double frac(double t) {
  double r = t - std::floor(t);
  // t slightly below an integer can round r up to 1.0.
  return r >= 1.0 ? 0.0 : r;
}

cplx unit_phase(double t) {
  const double r = frac(t);
  const double q = 4.0 * r;
  if (q == std::floor(q)) {
    switch (static_cast<int>(q)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * r;
  return {std::cos(angle), std::sin(angle)};
}

double shift_coordinate(double x, double alpha, long n) {
  if (n == 0) return frac(x);
  const double dn = static_cast<double>(n);
  const double hi = dn * alpha;
  const double lo = std::fma(dn, alpha, -hi);
  const double hi_frac = hi - std::floor(hi);
  return frac(frac(x) + hi_frac + lo);
}

double circle_distance(double a, double b) {
  const double d = frac(a - b);
  return std::min(d, 1.0 - d);
}

double torus_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    d = std::max(d, circle_distance(a[i], b[i]));
  }
  return d;
}

}  // namespace qpj
