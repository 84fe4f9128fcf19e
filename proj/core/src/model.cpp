#include "qpj/model.hpp"

#include <cmath>
#include <sstream>

#include "qpj/errors.hpp"

namespace qpj {

namespace {

std::string format_frequency(const Frequency& k) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << ")";
  return os.str();
}

bool cf_relation(double a, long height, double tol) {
  // Convergents p/q of a; a relation exists iff some q <= height has |q a - p| <= tol.
  double x = a - std::floor(a);
  long q_prev = 0;
  long q = 1;
  double r = x;
  if (std::abs(x) <= tol || std::abs(1.0 - x) <= tol) return true;
  for (int it = 0; it < 64; ++it) {
    if (r == 0.0) return true;
    const double inv = 1.0 / r;
    const double a_k = std::floor(inv);
    const long q_next = static_cast<long>(a_k) * q + q_prev;
    if (q_next > height || q_next <= 0) return false;
    q_prev = q;
    q = q_next;
    const double qa = static_cast<double>(q) * x;
    if (std::abs(qa - std::round(qa)) <= tol) return true;
    r = inv - a_k;
  }
  return false;
}

}  // namespace

bool has_small_integer_relation(const std::vector<double>& alpha, long height, double tol) {
  for (double a : alpha) {
    if (cf_relation(a, height, tol)) return true;
  }
  if (alpha.size() < 2) return false;
  // Mixed relations: exhaustive over a small box, cost bounded independent of height.
  const int d = static_cast<int>(alpha.size());
  const long box = std::max(2L, static_cast<long>(std::pow(2.0e5, 1.0 / d)));
  const long bound = std::min(box, height);
  std::vector<long> n(static_cast<std::size_t>(d), -bound);
  while (true) {
    bool nonzero = false;
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      s += static_cast<double>(n[static_cast<std::size_t>(i)]) * alpha[static_cast<std::size_t>(i)];
      nonzero = nonzero || n[static_cast<std::size_t>(i)] != 0;
    }
    if (nonzero && std::abs(s - std::round(s)) <= tol * static_cast<double>(bound)) return true;
    int i = 0;
    while (i < d && ++n[static_cast<std::size_t>(i)] > bound) {
      n[static_cast<std::size_t>(i)] = -bound;
      ++i;
    }
    if (i == d) break;
  }
  return false;
}

double golden_alpha() { return (std::sqrt(5.0) - 1.0) / 2.0; }

JacobiModel::JacobiModel(std::vector<double> alpha, TrigPoly c, TrigPoly v, std::string label)
    : alpha_(std::move(alpha)), c_(std::move(c)), v_(std::move(v)), label_(std::move(label)) {
  if (alpha_.empty()) throw ValidationError("alpha must have at least one component");
  for (auto& a : alpha_) {
    if (!std::isfinite(a)) throw ValidationError("alpha must be finite");
    a = frac(a);
  }
  if (c_.dim() != dim() || v_.dim() != dim()) {
    throw ValidationError("dimension mismatch between alpha (" + std::to_string(dim()) +
                          "), c (" + std::to_string(c_.dim()) + ") and v (" +
                          std::to_string(v_.dim()) + ")");
  }
  if (c_.is_zero()) throw ValidationError("c is identically zero");
  Frequency bad;
  if (!v_.is_hermitian(1e-12, &bad)) {
    throw ValidationError("v is not real-valued: coefficient at k = " + format_frequency(bad) +
                          " is not the conjugate of the one at -k");
  }
  c_sup_ = c_.sup_norm_estimate();
  v_sup_ = v_.sup_norm_estimate();
  if (dim() == 1) {
    c_zeros_ = zeros_on_circle(c_);
    mean_log_c_ = mean_log_abs(c_, MeanLogMethod::roots);
  } else {
    mean_log_c_ = mean_log_abs(c_, MeanLogMethod::quadrature);
  }
  if (has_small_integer_relation(alpha_)) {
    warnings_.push_back("alpha and 1 appear rationally dependent (integer relation of height <= 1e6)");
  }
}

TorusPoint JacobiModel::translate(std::span<const double> x, long n) const {
  if (static_cast<int>(x.size()) != dim()) throw UsageError("translate: dimension mismatch");
  TorusPoint y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = shift_coordinate(x[i], alpha_[i], n);
  return y;
}

namespace presets {

JacobiModel free_model(double alpha) {
  return JacobiModel({alpha}, TrigPoly::constant(1, 1.0), TrigPoly(1, {}), "free");
}

JacobiModel almost_mathieu(double lambda, double alpha) {
  std::ostringstream label;
  label << "almost-mathieu(lambda=" << lambda << ")";
  return JacobiModel({alpha}, TrigPoly::constant(1, 1.0), TrigPoly::cosine(1, 0, lambda),
                     label.str());
}

JacobiModel singular_harper(double lambda, double alpha) {
  std::ostringstream label;
  label << "singular-harper(lambda=" << lambda << ")";
  TrigPoly c(1, {{{0}, 1.0}, {{1}, 1.0}});
  return JacobiModel({alpha}, c, TrigPoly::cosine(1, 0, lambda), label.str());
}

JacobiModel by_name(const std::string& name, double lambda, double alpha) {
  if (name == "free") return free_model(alpha);
  if (name == "amo" || name == "almost-mathieu") return almost_mathieu(lambda, alpha);
  if (name == "singular-harper") return singular_harper(lambda, alpha);
  throw UsageError("unknown preset '" + name +
                   "' (expected free, almost-mathieu, singular-harper)");
}

}  // namespace presets

PhaseGrid PhaseGrid::uniform(int dim, long per_dim) {
  if (dim < 1 || per_dim < 1) throw UsageError("PhaseGrid::uniform: sizes must be positive");
  PhaseGrid g;
  g.kind_ = Kind::uniform;
  g.per_dim_ = per_dim;
  long total = 1;
  for (int i = 0; i < dim; ++i) total *= per_dim;
  g.points_.reserve(static_cast<std::size_t>(total));
  for (long idx = 0; idx < total; ++idx) {
    TorusPoint x(static_cast<std::size_t>(dim));
    long rem = idx;
    for (int i = dim - 1; i >= 0; --i) {
      x[static_cast<std::size_t>(i)] = static_cast<double>(rem % per_dim) / static_cast<double>(per_dim);
      rem /= per_dim;
    }
    g.points_.push_back(std::move(x));
  }
  return g;
}

PhaseGrid PhaseGrid::orbit(const JacobiModel& m, const TorusPoint& x0, long n) {
  if (n < 1) throw UsageError("PhaseGrid::orbit: length must be positive");
  PhaseGrid g;
  g.kind_ = Kind::orbit;
  g.per_dim_ = 0;
  g.points_.reserve(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) g.points_.push_back(m.translate(x0, j));
  return g;
}

}  // namespace qpj
