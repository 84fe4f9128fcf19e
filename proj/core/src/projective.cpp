#include "qpj/projective.hpp"

#include <cmath>
#include <stdexcept>

namespace qpj {

ProjPoint ProjPoint::from_pair(cplx v1, cplx v2) {
  const double n = std::hypot(std::abs(v1), std::abs(v2));
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("ProjPoint: zero or non-finite vector");
  ProjPoint p;
  p.v1_ = v1 / n;
  p.v2_ = v2 / n;
  return p;
}

ProjPoint ProjPoint::from_chart(cplx z) {
  if (std::abs(z) > kChartSwitch) return from_pair(1.0 / z, 1.0);
  return from_pair(1.0, z);
}

ProjPoint ProjPoint::from_extended(const ExtComplex& z) {
  return z.infinite ? infinity() : from_chart(z.value);
}

ExtComplex ProjPoint::chart() const {
  if (v1_ == 0.0) return ExtComplex::infinity();
  return ExtComplex::finite(v2_ / v1_);
}

ExtComplex ProjPoint::chart1() const {
  if (v2_ == 0.0) return ExtComplex::infinity();
  return ExtComplex::finite(v1_ / v2_);
}

double chordal_distance(const ProjPoint& a, const ProjPoint& b) {
  return 2.0 * std::abs(a.v1() * b.v2() - a.v2() * b.v1());
}

ProjPoint kernel_direction(const Mat2& d) {
  const auto [x, y] = least_singular_direction(d);
  return ProjPoint::from_pair(x, y);
}

ProjPoint proj_action(const Mat2& d, const ProjPoint& z) {
  const auto [w1, w2] = apply(d, z.v1(), z.v2());
  const double scale = op_norm(d);
  const double image = std::hypot(std::abs(w1), std::abs(w2));
  if (scale == 0.0 || image <= 1e-14 * scale) {
    throw KernelHit("proj_action: point lies in the kernel");
  }
  return ProjPoint::from_pair(w1, w2);
}

ExtComplex mobius(const Mat2& d, const ExtComplex& z) {
  if (z.infinite) {
    if (d.b == 0.0) return ExtComplex::infinity();
    return ExtComplex::finite(d.d / d.b);
  }
  const cplx den = d.a + d.b * z.value;
  const cplx num = d.c + d.d * z.value;
  if (den == 0.0) return ExtComplex::infinity();
  return ExtComplex::finite(num / den);
}

cplx mobius_derivative(const Mat2& d, cplx z) {
  const cplx den = d.a + d.b * z;
  if (den == 0.0) throw PoleError("mobius_derivative: pole of the chart action");
  return d.det() / (den * den);
}

}  // namespace qpj
