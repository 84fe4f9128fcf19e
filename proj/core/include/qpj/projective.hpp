#pragma once

#include <stdexcept>

#include "qpj/extended.hpp"
#include "qpj/mat2.hpp"

namespace qpj {

// Point of the projective line CP^1. Stored as a unit homogeneous pair (v1, v2);
// the chart coordinate is phi_2 = v2 / v1, with E_2 = span(e_2) at infinity.
class ProjPoint {
 public:
  ProjPoint() : v1_(1.0), v2_(0.0) {}
  static ProjPoint from_chart(cplx z);
  static ProjPoint from_extended(const ExtComplex& z);
  static ProjPoint infinity() { return from_pair(0.0, 1.0); }
  // Throws std::invalid_argument for the zero vector.
  static ProjPoint from_pair(cplx v1, cplx v2);

  cplx v1() const { return v1_; }
  cplx v2() const { return v2_; }
  bool is_infinity() const { return v1_ == 0.0; }
  ExtComplex chart() const;
  // phi_1 = v1 / v2, used near infinity.
  ExtComplex chart1() const;

 private:
  cplx v1_;
  cplx v2_;
};

// 2 |v1 w2 - v2 w1| for unit pairs; agrees with chordal_distance on the charts.
double chordal_distance(const ProjPoint& a, const ProjPoint& b);

// |z| beyond which computations switch to the phi_1 chart.
inline constexpr double kChartSwitch = 10.0;

// Kernel direction of a rank-one (or zero-determinant) matrix; the least
// singular direction otherwise.
ProjPoint kernel_direction(const Mat2& d);

// D . z, the linear fractional action on CP^1 \ ker D.
// Throws KernelHit if z is within chordal distance 1e-14 of ker D and D is singular.
ProjPoint proj_action(const Mat2& d, const ProjPoint& z);

// Chart (phi_2) formula of the same action: z -> (c + d z) / (a + b z).
ExtComplex mobius(const Mat2& d, const ExtComplex& z);

// Derivative of z -> (c + d z) / (a + b z) in the phi_2 chart: det D / (a + b z)^2.
// Throws PoleError when a + b z = 0.
cplx mobius_derivative(const Mat2& d, cplx z);

class KernelHit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpj
