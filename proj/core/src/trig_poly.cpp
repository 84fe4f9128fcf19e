#include "qpj/trig_poly.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qpj/errors.hpp"
#include "qpj/linalg.hpp"

namespace qpj {

TrigPoly::TrigPoly(int dim, const std::vector<Term>& terms) : dim_(dim) {
  if (dim < 1) throw UsageError("TrigPoly: dimension must be positive");
  std::map<Frequency, cplx> merged;
  for (const auto& t : terms) {
    if (static_cast<int>(t.k.size()) != dim) {
      throw UsageError("TrigPoly: frequency vector has wrong dimension");
    }
    merged[t.k] += t.a;
  }
  for (const auto& [k, a] : merged) {
    if (a != 0.0) terms_.push_back({k, a});
  }
}

TrigPoly TrigPoly::constant(int dim, cplx value) {
  return TrigPoly(dim, {{Frequency(static_cast<std::size_t>(dim), 0), value}});
}

TrigPoly TrigPoly::cosine(int dim, int axis, double amp) {
  Frequency plus(static_cast<std::size_t>(dim), 0);
  Frequency minus(static_cast<std::size_t>(dim), 0);
  plus[static_cast<std::size_t>(axis)] = 1;
  minus[static_cast<std::size_t>(axis)] = -1;
  return TrigPoly(dim, {{plus, amp}, {minus, amp}});
}

cplx TrigPoly::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw UsageError("TrigPoly::eval: point dimension " + std::to_string(x.size()) +
                     " does not match polynomial dimension " + std::to_string(dim_));
  }
  cplx sum = 0.0;
  for (const auto& t : terms_) {
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) phase += t.k[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    sum += t.a * unit_phase(phase);
  }
  return sum;
}

bool TrigPoly::is_hermitian(double tol, Frequency* offending) const {
  double scale = 0.0;
  for (const auto& t : terms_) scale = std::max(scale, std::abs(t.a));
  const double limit = tol * std::max(scale, 1.0);
  auto coefficient = [&](const Frequency& k) -> cplx {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, const Frequency& key) { return t.k < key; });
    return (it != terms_.end() && it->k == k) ? it->a : cplx(0.0);
  };
  for (const auto& t : terms_) {
    Frequency neg = t.k;
    for (auto& ki : neg) ki = -ki;
    if (std::abs(coefficient(neg) - std::conj(t.a)) > limit) {
      if (offending) *offending = t.k;
      return false;
    }
  }
  return true;
}

double TrigPoly::coefficient_l1() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.a);
  return s;
}

double TrigPoly::sup_norm_estimate(long samples) const {
  if (terms_.empty()) return 0.0;
  const long per_dim =
      std::max(8L, static_cast<long>(std::pow(static_cast<double>(samples), 1.0 / dim_)));
  long total = 1;
  for (int i = 0; i < dim_; ++i) total *= per_dim;
  std::vector<double> x(static_cast<std::size_t>(dim_));
  double best = 0.0;
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int i = dim_ - 1; i >= 0; --i) {
      x[static_cast<std::size_t>(i)] = static_cast<double>(rem % per_dim) / per_dim;
      rem /= per_dim;
    }
    best = std::max(best, std::abs(eval(x)));
  }
  return best;
}

std::pair<int, int> TrigPoly::degree_range() const {
  if (dim_ != 1) throw UsageError("degree_range requires d = 1");
  if (terms_.empty()) return {0, 0};
  return {terms_.front().k[0], terms_.back().k[0]};
}

namespace {

// Coefficients of z^{-kmin} p(z) in ascending powers.
std::vector<cplx> shifted_coefficients(const TrigPoly& p) {
  const auto [kmin, kmax] = p.degree_range();
  std::vector<cplx> coeffs(static_cast<std::size_t>(kmax - kmin + 1), 0.0);
  for (const auto& t : p.terms()) coeffs[static_cast<std::size_t>(t.k[0] - kmin)] = t.a;
  return coeffs;
}

double mean_log_abs_roots(const TrigPoly& p) {
  const auto coeffs = shifted_coefficients(p);
  double result = std::log(std::abs(coeffs.back()));
  for (const auto& r : linalg::polynomial_roots(coeffs)) {
    result += std::log(std::max(1.0, std::abs(r)));
  }
  return result;
}

struct Integrand {
  const TrigPoly* poly;
  std::vector<double> point;
  int axis;
  double shift;
  double tol;
  std::size_t limit;
};

double log_abs_at(const TrigPoly& p, std::span<const double> x) {
  const double a = std::abs(p.eval(x));
  return a > 0.0 ? std::log(a) : std::log(std::numeric_limits<double>::min());
}

double integrate_axis(Integrand& ig);

double axis_integrand(double t, void* params) {
  auto* ig = static_cast<Integrand*>(params);
  ig->point[static_cast<std::size_t>(ig->axis)] = frac(t);
  if (ig->axis + 1 == ig->poly->dim()) return log_abs_at(*ig->poly, ig->point);
  Integrand inner = *ig;
  inner.axis = ig->axis + 1;
  return integrate_axis(inner);
}

// Adaptive Gauss-Kronrod with epsilon-extrapolation (QAGS) handles the
// integrable log singularities at zeros of p. The window is shifted off the
// dyadic rationals so that a zero at x = 1/2 is never a node.
double integrate_axis(Integrand& ig) {
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(ig.limit);
  gsl_function f;
  f.function = &axis_integrand;
  f.params = &ig;
  double result = 0.0;
  double abserr = 0.0;
  const int status = gsl_integration_qags(&f, ig.shift, ig.shift + 1.0, ig.tol, 0.0, ig.limit,
                                          ws, &result, &abserr);
  gsl_integration_workspace_free(ws);
  if (status != GSL_SUCCESS && abserr > 10.0 * ig.tol) {
    throw ConvergenceError("mean_log_abs quadrature did not converge: " +
                               std::string(gsl_strerror(status)),
                           result - abserr, result);
  }
  return result;
}

}  // namespace

double mean_log_abs(const TrigPoly& p, MeanLogMethod method, double tol) {
  if (p.is_zero()) throw DomainError("mean_log_abs: polynomial is identically zero");
  if (method == MeanLogMethod::roots) {
    if (p.dim() != 1) throw UsageError("mean_log_abs: roots method requires d = 1");
    return mean_log_abs_roots(p);
  }
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  Integrand ig{&p, std::vector<double>(static_cast<std::size_t>(p.dim()), 0.0), 0,
               (std::sqrt(5.0) - 1.0) / 2.0, p.dim() == 1 ? tol : std::max(tol, 1e-8), 2000};
  try {
    const double r = integrate_axis(ig);
    gsl_set_error_handler(old);
    return r;
  } catch (...) {
    gsl_set_error_handler(old);
    throw;
  }
}

std::vector<double> zeros_on_circle(const TrigPoly& p, double tol) {
  if (p.dim() != 1) throw UsageError("zeros_on_circle requires d = 1");
  if (p.is_zero()) throw DomainError("zeros_on_circle: polynomial is identically zero");
  std::vector<double> zeros;
  for (const auto& r : linalg::polynomial_roots(shifted_coefficients(p))) {
    if (std::abs(std::abs(r) - 1.0) <= tol) {
      zeros.push_back(frac(std::arg(r) / (2.0 * std::numbers::pi)));
    }
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

}  // namespace qpj
