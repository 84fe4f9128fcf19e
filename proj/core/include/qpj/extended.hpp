#pragma once

#include <cmath>
#include <complex>

#include "qpj/torus.hpp"

namespace qpj {

// Point of the extended complex plane C u {inf}.
struct ExtComplex {
  cplx value{0.0};
  bool infinite = false;

  static ExtComplex finite(cplx z) { return {z, false}; }
  static ExtComplex infinity() { return {0.0, true}; }

  double abs() const { return infinite ? HUGE_VAL : std::abs(value); }
};

// Distance on the Riemann sphere of diameter 2; equals 2 at antipodes, finite at inf.
inline double chordal_distance(const ExtComplex& z, const ExtComplex& w) {
  if (z.infinite && w.infinite) return 0.0;
  if (z.infinite) return 2.0 / std::sqrt(1.0 + std::norm(w.value));
  if (w.infinite) return 2.0 / std::sqrt(1.0 + std::norm(z.value));
  return 2.0 * std::abs(z.value - w.value) /
         std::sqrt((1.0 + std::norm(z.value)) * (1.0 + std::norm(w.value)));
}

// Product and reciprocal on the sphere; 0 * inf has no value and is reported via *undefined.
inline ExtComplex ext_mul(cplx a, const ExtComplex& z, bool* undefined) {
  *undefined = false;
  if (z.infinite) {
    if (a == 0.0) {
      *undefined = true;
      return ExtComplex::infinity();
    }
    return ExtComplex::infinity();
  }
  return ExtComplex::finite(a * z.value);
}

inline ExtComplex ext_reciprocal(const ExtComplex& z) {
  if (z.infinite) return ExtComplex::finite(0.0);
  if (z.value == 0.0) return ExtComplex::infinity();
  return ExtComplex::finite(1.0 / z.value);
}

inline ExtComplex ext_neg(const ExtComplex& z) {
  return z.infinite ? z : ExtComplex::finite(-z.value);
}

}  // namespace qpj
