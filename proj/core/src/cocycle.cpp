#include "qpj/cocycle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qpj/errors.hpp"
#include "qpj/orbit.hpp"

namespace qpj {

const char* to_string(CocycleKind k) {
  switch (k) {
    case CocycleKind::A: return "A";
    case CocycleKind::A_tilde: return "A_tilde";
    case CocycleKind::B: return "B";
    case CocycleKind::B_tilde: return "B_tilde";
  }
  return "?";
}

namespace {

Mat2 build(CocycleKind kind, cplx energy, cplx c0, cplx c_prev, double v0) {
  switch (kind) {
    case CocycleKind::A: return {energy - v0, -std::conj(c_prev), c0, 0.0};
    case CocycleKind::A_tilde: return {energy - v0, -std::norm(c_prev), 1.0, 0.0};
    case CocycleKind::B: return Mat2{energy - v0, -std::conj(c_prev), c0, 0.0} / c0;
    case CocycleKind::B_tilde: return Mat2{energy - v0, -std::norm(c_prev), 1.0, 0.0} / c_prev;
  }
  return {};
}

// Site whose c-value is the denominator of a B-kind matrix at site j.
long denominator_site(CocycleKind kind, long j) { return kind == CocycleKind::B ? j : j - 1; }

// Product accumulator with power-of-two renormalization: scaling is exact, so the
// accumulated exponent carries no rounding.
class Accumulator {
 public:
  void push(const Mat2& d) {
    if (zero_) return;
    p_ = d * p_;
    log_det_ += std::log(std::abs(d.det()));
    const double mx = std::max({std::abs(p_.a.real()), std::abs(p_.a.imag()),
                                std::abs(p_.b.real()), std::abs(p_.b.imag()),
                                std::abs(p_.c.real()), std::abs(p_.c.imag()),
                                std::abs(p_.d.real()), std::abs(p_.d.imag())});
    if (mx == 0.0) {
      zero_ = true;
      return;
    }
    const int e = std::ilogb(mx);
    if (e != 0) {
      auto sc = [e](cplx z) { return cplx(std::ldexp(z.real(), -e), std::ldexp(z.imag(), -e)); };
      p_ = {sc(p_.a), sc(p_.b), sc(p_.c), sc(p_.d)};
      exp2_ += e;
    }
  }

  double log_norm() const {
    if (zero_) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(exp2_) * std::numbers::ln2 + std::log(op_norm(p_));
  }

  Product product() const {
    Product out;
    out.log_abs_det = log_det_;
    if (zero_) {
      out.normalized = Mat2{};
      out.log_norm = -std::numeric_limits<double>::infinity();
      return out;
    }
    const double nrm = op_norm(p_);
    out.normalized = p_ / nrm;
    out.log_norm = static_cast<double>(exp2_) * std::numbers::ln2 + std::log(nrm);
    return out;
  }

 private:
  Mat2 p_ = Mat2::identity();
  long long exp2_ = 0;
  double log_det_ = 0.0;
  bool zero_ = false;
};

class SingularSet {
 public:
  explicit SingularSet(const JacobiModel& m) : m_(&m) {}

  bool any() const { return m_->dim() > 1 || !m_->c_zeros().empty(); }

  // True when T^j x lies within kSingularPhaseRadius of a zero of c.
  bool hits(std::span<const double> x, long j, Orbit& orbit) const {
    if (m_->dim() == 1) {
      if (m_->c_zeros().empty()) return false;
      const double p = shift_coordinate(x[0], m_->alpha()[0], j);
      for (double z : m_->c_zeros()) {
        if (circle_distance(p, z) <= kSingularPhaseRadius) return true;
      }
      return false;
    }
    return std::abs(orbit.c(j)) <= kSingularPhaseRadius * m_->c_sup();
  }

 private:
  const JacobiModel* m_;
};

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Mat2 cocycle_matrix(const JacobiModel& m, CocycleKind kind, cplx energy,
                    std::span<const double> x) {
  const cplx c0 = m.c_at(x);
  const TorusPoint prev = m.translate(x, -1);
  const cplx c_prev = m.c_at(prev);
  const double v0 = m.v_at(x);
  if (kind == CocycleKind::B && c0 == 0.0) {
    throw SingularPhaseError("B: c(x) = 0 at the requested phase", 0);
  }
  if (kind == CocycleKind::B_tilde && c_prev == 0.0) {
    throw SingularPhaseError("B_tilde: c(T^-1 x) = 0 at the requested phase", -1);
  }
  return build(kind, energy, c0, c_prev, v0);
}

DetIdentityReport det_identity_check(const JacobiModel& m, cplx energy,
                                     std::span<const double> x) {
  const cplx c0 = m.c_at(x);
  const cplx c_prev = m.c_at(m.translate(x, -1));
  const Mat2 a = cocycle_matrix(m, CocycleKind::A, energy, x);
  const Mat2 at = cocycle_matrix(m, CocycleKind::A_tilde, energy, x);
  DetIdentityReport r;
  r.det_a = a.det();
  r.det_a_residual = a.det() - c0 * std::conj(c_prev);
  r.det_a_tilde_residual = at.det() - std::norm(c_prev);
  r.singular = (c0 == 0.0) || (c_prev == 0.0);
  if (c_prev != 0.0) {
    r.det_b_tilde_residual = std::abs((at / c_prev).det()) - 1.0;
  }
  return r;
}

Product iterate(const JacobiModel& m, CocycleKind kind, cplx energy, std::span<const double> x,
                long n) {
  if (n < 1) throw UsageError("iterate: n must be positive");
  if (static_cast<int>(x.size()) != m.dim()) throw UsageError("iterate: dimension mismatch");
  OrbitTable table(m, std::min(n + 1, 4096L));
  Orbit orbit(table, TorusPoint(x.begin(), x.end()));
  const SingularSet singular(m);
  const bool check = is_transfer_kind(kind) && singular.any();
  Accumulator acc;
  cplx c_prev = orbit.c(-1);
  for (long j = 0; j < n; ++j) {
    const cplx c0 = orbit.c(j);
    if (check && singular.hits(x, denominator_site(kind, j), orbit)) {
      throw SingularPhaseError("orbit passes within the singular-phase radius of a zero of c at site " +
                                   std::to_string(denominator_site(kind, j)),
                               denominator_site(kind, j));
    }
    const cplx denom = kind == CocycleKind::B ? c0 : c_prev;
    if (is_transfer_kind(kind) && denom == 0.0) {
      throw SingularPhaseError("zero denominator at site " + std::to_string(denominator_site(kind, j)),
                               denominator_site(kind, j));
    }
    acc.push(build(kind, energy, c0, c_prev, orbit.v(j)));
    c_prev = c0;
  }
  return acc.product();
}

std::vector<TorusPoint> lyapunov_phases(const JacobiModel& m, const LyapunovScheme& scheme) {
  if (scheme.phases < 1 || scheme.steps < 1) throw UsageError("LyapunovScheme: sizes must be positive");
  const SingularSet singular(m);
  OrbitTable table(m);
  auto clean = [&](const TorusPoint& x) {
    if (!singular.any()) return true;
    Orbit orbit(table, x);
    for (long j = -1; j < scheme.steps; ++j) {
      if (singular.hits(x, j, orbit)) return false;
    }
    return true;
  };
  std::vector<TorusPoint> out;
  if (scheme.type == LyapunovScheme::Type::phase_avg) {
    const long per_dim = std::max(
        1L, std::lround(std::pow(static_cast<double>(scheme.phases), 1.0 / m.dim())));
    const PhaseGrid grid = PhaseGrid::uniform(m.dim(), per_dim);
    for (const auto& x : grid.points()) {
      if (clean(x)) out.push_back(x);
    }
    if (out.empty()) throw DomainError("lyapunov: every grid phase is singular");
    return out;
  }
  std::mt19937_64 rng(scheme.seed);
  int attempts = 0;
  while (static_cast<long>(out.size()) < scheme.phases) {
    TorusPoint x(static_cast<std::size_t>(m.dim()));
    for (auto& xi : x) xi = uniform01(rng);
    if (clean(x)) {
      out.push_back(std::move(x));
    } else if (++attempts > 1000) {
      throw DomainError("lyapunov: could not find non-singular starting phases");
    }
  }
  return out;
}

std::vector<LEEstimate> lyapunov_multi(const JacobiModel& m, std::span<const CocycleKind> kinds,
                                       cplx energy, const LyapunovScheme& scheme) {
  const auto phases = lyapunov_phases(m, scheme);
  OrbitTable table(m);
  const long n = scheme.steps;
  const long half = std::max(1L, n / 2);
  std::vector<double> full_sum(kinds.size(), 0.0);
  std::vector<double> half_sum(kinds.size(), 0.0);
  std::vector<Accumulator> acc(kinds.size());
  for (const auto& x : phases) {
    Orbit orbit(table, x);
    for (auto& a : acc) a = Accumulator();
    cplx c_prev = orbit.c(-1);
    for (long j = 0; j < n; ++j) {
      const cplx c0 = orbit.c(j);
      const double v0 = orbit.v(j);
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        acc[k].push(build(kinds[k], energy, c0, c_prev, v0));
      }
      c_prev = c0;
      if (j + 1 == half) {
        for (std::size_t k = 0; k < kinds.size(); ++k) {
          half_sum[k] += acc[k].log_norm() / static_cast<double>(half);
        }
      }
    }
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      full_sum[k] += acc[k].log_norm() / static_cast<double>(n);
    }
  }
  std::vector<LEEstimate> out(kinds.size());
  const double count = static_cast<double>(phases.size());
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    out[k].value = full_sum[k] / count;
    out[k].half_value = half_sum[k] / count;
    out[k].n_steps = n;
    out[k].phase_count = static_cast<long>(phases.size());
    out[k].converged = std::isfinite(out[k].value) &&
                       std::abs(out[k].value - out[k].half_value) <= scheme.tolerance;
  }
  return out;
}

LEEstimate lyapunov(const JacobiModel& m, CocycleKind kind, cplx energy,
                    const LyapunovScheme& scheme) {
  const CocycleKind kinds[] = {kind};
  return lyapunov_multi(m, kinds, energy, scheme).front();
}

double conjugacy_residual(const JacobiModel& m, cplx energy, std::span<const double> x) {
  const cplx c0 = m.c_at(x);
  const cplx c_prev = m.c_at(m.translate(x, -1));
  if (c0 == 0.0 || c_prev == 0.0) {
    throw SingularPhaseError("conjugacy_residual: c vanishes at x or T^-1 x", c0 == 0.0 ? 0 : -1);
  }
  const Mat2 mx{1.0, 0.0, 0.0, 1.0 / c_prev};
  const Mat2 m_next_inv{1.0, 0.0, 0.0, c0};  // M(Tx)^-1, M(Tx) = diag(1, 1/c(x))
  const Mat2 lhs = m_next_inv * cocycle_matrix(m, CocycleKind::A_tilde, energy, x) * mx;
  return op_norm(lhs - cocycle_matrix(m, CocycleKind::A, energy, x));
}

LERelationReport le_relation_report(const JacobiModel& m, cplx energy,
                                    const LyapunovScheme& scheme) {
  const CocycleKind kinds[] = {CocycleKind::A, CocycleKind::A_tilde, CocycleKind::B};
  const auto est = lyapunov_multi(m, kinds, energy, scheme);
  LERelationReport r;
  r.a = est[0];
  r.a_tilde = est[1];
  r.b = est[2];
  r.mean_log_c = m.mean_log_c();
  r.residual_a_tilde = r.a.value - r.a_tilde.value;
  r.residual_b = r.b.value - (r.a.value - r.mean_log_c);
  return r;
}

}  // namespace qpj
