#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qpj/torus.hpp"

namespace qpj {

using Frequency = std::vector<int>;

// Finitely supported Fourier series p(x) = sum_k a_k exp(2 pi i k.x) on the d-torus.
// Terms are kept in canonical form: sorted by frequency, no zero coefficients.
class TrigPoly {
 public:
  struct Term {
    Frequency k;
    cplx a;
  };

  TrigPoly() = default;
  TrigPoly(int dim, const std::vector<Term>& terms);

  static TrigPoly constant(int dim, cplx value);
  // 2*amp*cos(2 pi x_axis)
  static TrigPoly cosine(int dim, int axis, double amp);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  cplx eval(std::span<const double> x) const;

  // a_{-k} == conj(a_k) up to tol * max|a|; on failure sets *offending to the
  // first frequency that violates it.
  bool is_hermitian(double tol = 1e-12, Frequency* offending = nullptr) const;

  // sum_k |a_k|, an upper bound for the sup norm.
  double coefficient_l1() const;

  // Sampled sup norm over a uniform grid of about `samples` points.
  double sup_norm_estimate(long samples = 8192) const;

  // Degree range [kmin, kmax] for d = 1.
  std::pair<int, int> degree_range() const;

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  int dim_ = 1;
  std::vector<Term> terms_;
};

enum class MeanLogMethod { roots, quadrature };

// Integral of log|p| over the torus against Haar measure. roots (d = 1 only)
// uses Jensen's formula: log|leading coeff| + sum over roots of log max(1, |r|).
// Throws DomainError for the zero polynomial and ConvergenceError when the
// quadrature misses its tolerance.
double mean_log_abs(const TrigPoly& p, MeanLogMethod method, double tol = 1e-9);

// Zeros of p on the circle for d = 1, as phases in [0,1), ascending.
std::vector<double> zeros_on_circle(const TrigPoly& p, double tol = 1e-9);

}  // namespace qpj
