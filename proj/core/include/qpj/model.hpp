#pragma once

#include <string>
#include <vector>

#include "qpj/torus.hpp"
#include "qpj/trig_poly.hpp"

namespace qpj {

// The operator family
//   [H_x psi]_n = conj(c(T^{n-1} x)) psi_{n-1} + c(T^n x) psi_{n+1} + v(T^n x) psi_n,
// with T x = x + alpha on the d-torus. Immutable after construction.
class JacobiModel {
 public:
  // Validates dimensions, Hermitian v, nonzero c. Throws ValidationError.
  JacobiModel(std::vector<double> alpha, TrigPoly c, TrigPoly v, std::string label = "model");

  int dim() const { return static_cast<int>(alpha_.size()); }
  const std::vector<double>& alpha() const { return alpha_; }
  const TrigPoly& c() const { return c_; }
  const TrigPoly& v() const { return v_; }
  const std::string& label() const { return label_; }

  cplx c_at(std::span<const double> x) const { return c_.eval(x); }
  double v_at(std::span<const double> x) const { return v_.eval(x).real(); }

  // x + n*alpha mod 1.
  TorusPoint translate(std::span<const double> x, long n) const;

  double c_sup() const { return c_sup_; }
  double v_sup() const { return v_sup_; }
  // 2 |c|_inf + |v|_inf, the a priori bound on |E| for E in the spectrum.
  double operator_bound() const { return 2.0 * c_sup_ + v_sup_; }

  // Zeros of c on the circle (d = 1 only; empty otherwise).
  const std::vector<double>& c_zeros() const { return c_zeros_; }

  // Integral of log|c|: exact (roots) for d = 1, quadrature otherwise.
  double mean_log_c() const { return mean_log_c_; }

  // Non-fatal findings, e.g. a small integer relation among (alpha, 1).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<double> alpha_;
  TrigPoly c_;
  TrigPoly v_;
  std::string label_;
  double c_sup_ = 0.0;
  double v_sup_ = 0.0;
  double mean_log_c_ = 0.0;
  std::vector<double> c_zeros_;
  std::vector<std::string> warnings_;
};

// Searches for an integer relation n.alpha = p with 0 < |n| <= height, up to
// tolerance tol. Continued fractions for d = 1; bounded brute force otherwise.
bool has_small_integer_relation(const std::vector<double>& alpha, long height = 1'000'000,
                                double tol = 1e-10);

double golden_alpha();

namespace presets {

// c = 1, v = 0.
JacobiModel free_model(double alpha = golden_alpha());
// c = 1, v = 2 lambda cos(2 pi x).
JacobiModel almost_mathieu(double lambda, double alpha = golden_alpha());
// c = 1 + exp(2 pi i x), v = 2 lambda cos(2 pi x); c vanishes at x = 1/2.
JacobiModel singular_harper(double lambda, double alpha = golden_alpha());

// Resolves "free", "amo"/"almost-mathieu", "singular-harper".
JacobiModel by_name(const std::string& name, double lambda, double alpha);

}  // namespace presets

// Ordered sample of torus points standing in for sup over X and Haar integrals.
class PhaseGrid {
 public:
  enum class Kind { uniform, orbit };

  // P points per dimension, x = k/P, lexicographic order.
  static PhaseGrid uniform(int dim, long per_dim);
  // x0, T x0, ..., T^{n-1} x0.
  static PhaseGrid orbit(const JacobiModel& m, const TorusPoint& x0, long n);

  Kind kind() const { return kind_; }
  std::size_t size() const { return points_.size(); }
  const TorusPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<TorusPoint>& points() const { return points_; }
  long per_dim() const { return per_dim_; }

 private:
  Kind kind_ = Kind::uniform;
  long per_dim_ = 0;
  std::vector<TorusPoint> points_;
};

}  // namespace qpj
