#include "qpj/weyl.hpp"

#include <cmath>
#include <ostream>

#include "qpj/cocycle.hpp"
#include "qpj/errors.hpp"
#include "qpj/format.hpp"
#include "qpj/linalg.hpp"
#include "qpj/projective.hpp"

namespace qpj {

const char* to_string(MStatus s) {
  switch (s) {
    case MStatus::converged: return "converged";
    case MStatus::pole: return "pole";
    case MStatus::not_converged: return "not_converged";
    case MStatus::singular_solve: return "singular_solve";
  }
  return "?";
}

const char* to_string(SectionKind k) {
  switch (k) {
    case SectionKind::s_minus: return "s_minus";
    case SectionKind::s_plus: return "s_plus";
    case SectionKind::s_tilde_minus: return "s_tilde_minus";
    case SectionKind::s_tilde_plus: return "s_tilde_plus";
  }
  return "?";
}

WeylSolver::WeylSolver(const JacobiModel& m, TruncationPolicy policy)
    : model_(&m), policy_(policy), table_(m) {
  if (policy_.initial < 4 || policy_.max < policy_.initial) {
    throw UsageError("TruncationPolicy: need 4 <= initial <= max");
  }
}

ExtComplex WeylSolver::solve(HalfLine side, cplx energy, Orbit& orbit, long size, int* info) {
  const auto n = static_cast<std::size_t>(size);
  sub_.assign(n > 0 ? n - 1 : 0, 0.0);
  super_.assign(n > 0 ? n - 1 : 0, 0.0);
  diag_.assign(n, 0.0);
  rhs_.assign(n, 0.0);
  // Site of matrix row i: -size + i on the left half-line, i + 1 on the right.
  const long first = side == HalfLine::minus ? -size : 1;
  for (std::size_t i = 0; i < n; ++i) {
    const long site = first + static_cast<long>(i);
    diag_[i] = orbit.v(site) - energy;
    if (i + 1 < n) {
      const cplx c = orbit.c(site);
      super_[i] = c;
      sub_[i] = std::conj(c);
    }
  }
  const std::size_t target = side == HalfLine::minus ? n - 1 : 0;
  rhs_[target] = 1.0;
  *info = linalg::solve_tridiagonal(sub_, diag_, super_, rhs_);
  if (*info != 0) return ExtComplex::infinity();
  return ExtComplex::finite(rhs_[target]);
}

MValue WeylSolver::at_size(HalfLine side, cplx energy, std::span<const double> x, long size) {
  if (size < 2) throw UsageError("Weyl truncation size must be at least 2");
  Orbit orbit(table_, TorusPoint(x.begin(), x.end()));
  int info_half = 0;
  int info = 0;
  const ExtComplex half = solve(side, energy, orbit, size / 2, &info_half);
  const ExtComplex full = solve(side, energy, orbit, size, &info);
  MValue out;
  out.value = full;
  out.truncation = size;
  out.residual = chordal_distance(full, half);
  out.status = info != 0 ? MStatus::singular_solve : MStatus::converged;
  return out;
}

MValue WeylSolver::adaptive(HalfLine side, cplx energy, std::span<const double> x) {
  Orbit orbit(table_, TorusPoint(x.begin(), x.end()));
  int info = 0;
  ExtComplex prev = solve(side, energy, orbit, policy_.initial / 2, &info);
  double prev_abs = prev.abs();
  int growth_streak = 0;
  MValue out;
  for (long size = policy_.initial; size <= policy_.max; size *= 2) {
    const ExtComplex cur = solve(side, energy, orbit, size, &info);
    const double cur_abs = cur.abs();
    growth_streak = (cur_abs >= policy_.pole_growth * prev_abs) ? growth_streak + 1 : 0;
    out.value = cur;
    out.truncation = size;
    out.residual = chordal_distance(cur, prev);
    if (growth_streak >= 2) {
      out.value = ExtComplex::infinity();
      out.status = MStatus::pole;
      return out;
    }
    if (out.residual <= policy_.tolerance) {
      out.status = MStatus::converged;
      return out;
    }
    prev = cur;
    prev_abs = cur_abs;
  }
  out.status = MStatus::not_converged;
  return out;
}

MValue m_minus_truncated(const JacobiModel& m, cplx energy, std::span<const double> x, long size) {
  WeylSolver solver(m);
  return solver.at_size(HalfLine::minus, energy, x, size);
}

MValue m_plus_truncated(const JacobiModel& m, cplx energy, std::span<const double> x, long size) {
  WeylSolver solver(m);
  return solver.at_size(HalfLine::plus, energy, x, size);
}

ExtComplex riccati_step(cplx energy, double v_x, cplx c_prev, const ExtComplex& m_x) {
  // (p, q) with m = p / q maps to (-q, (E - v) q + |c_prev|^2 p).
  const cplx p = m_x.infinite ? cplx(1.0) : m_x.value;
  const cplx q = m_x.infinite ? cplx(0.0) : cplx(1.0);
  const cplx p_next = -q;
  const cplx q_next = (energy - v_x) * q + std::norm(c_prev) * p;
  if (q_next == 0.0) return ExtComplex::infinity();
  return ExtComplex::finite(p_next / q_next);
}

ExtComplex m_minus_riccati(const JacobiModel& m, cplx energy, std::span<const double> x, long steps) {
  if (!(energy.imag() > 0.0)) {
    throw DomainError("m_minus_riccati requires Im E > 0; use the truncation method on the real axis");
  }
  if (steps < 1) throw UsageError("m_minus_riccati: burn-in length must be positive");
  OrbitTable table(m);
  Orbit orbit(table, TorusPoint(x.begin(), x.end()));
  // Homogeneous pair, normalized every step.
  cplx p = 0.0;
  cplx q = 1.0;
  for (long site = -steps; site < 0; ++site) {
    const cplx c_prev = orbit.c(site - 1);
    const cplx p_next = -q;
    const cplx q_next = (energy - orbit.v(site)) * q + std::norm(c_prev) * p;
    const double nrm = std::max(std::abs(p_next), std::abs(q_next));
    p = p_next / nrm;
    q = q_next / nrm;
  }
  if (q == 0.0) return ExtComplex::infinity();
  return ExtComplex::finite(p / q);
}

MField m_field(const JacobiModel& m, cplx energy, const PhaseGrid& grid, HalfLine side,
               const TruncationPolicy& policy) {
  WeylSolver solver(m, policy);
  MField f;
  f.energy = energy;
  f.side = side;
  f.points = grid.points();
  f.values.reserve(grid.size());
  for (const auto& x : grid.points()) f.values.push_back(solver.adaptive(side, energy, x));
  return f;
}

SectionValue section_at(WeylSolver& solver, SectionKind kind, cplx energy,
                        std::span<const double> x) {
  const JacobiModel& m = solver.model();
  const TorusPoint prev = m.translate(x, -1);
  const cplx c_prev = m.c_at(prev);
  SectionValue out;
  bool undefined = false;
  switch (kind) {
    case SectionKind::s_minus:
    case SectionKind::s_tilde_minus: {
      out.m = solver.adaptive(HalfLine::minus, energy, x);
      const cplx factor = kind == SectionKind::s_minus ? -c_prev : cplx(-1.0);
      out.value = ext_mul(factor, out.m.value, &undefined);
      break;
    }
    case SectionKind::s_plus:
    case SectionKind::s_tilde_plus: {
      out.m = solver.adaptive(HalfLine::plus, energy, prev);
      const cplx factor = kind == SectionKind::s_plus ? std::conj(c_prev) : cplx(std::norm(c_prev));
      out.value = ext_neg(ext_reciprocal(ext_mul(factor, out.m.value, &undefined)));
      break;
    }
  }
  out.suspect = undefined || !out.m.ok();
  return out;
}

bool SectionField::any_suspect() const {
  for (const auto& v : values) {
    if (v.suspect) return true;
  }
  return false;
}

SectionField sections(const JacobiModel& m, cplx energy, const PhaseGrid& grid, SectionKind kind,
                      const TruncationPolicy& policy) {
  WeylSolver solver(m, policy);
  SectionField f;
  f.energy = energy;
  f.kind = kind;
  f.points = grid.points();
  f.values.reserve(grid.size());
  for (const auto& x : grid.points()) f.values.push_back(section_at(solver, kind, energy, x));
  return f;
}

InvarianceReport invariance_residual(const JacobiModel& m, cplx energy, const PhaseGrid& grid,
                                     const TruncationPolicy& policy) {
  WeylSolver solver(m, policy);
  InvarianceReport r;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const TorusPoint& x = grid[i];
    const TorusPoint tx = m.translate(x, 1);
    const SectionValue s = section_at(solver, SectionKind::s_minus, energy, x);
    const SectionValue s_next = section_at(solver, SectionKind::s_minus, energy, tx);
    const SectionValue st = section_at(solver, SectionKind::s_tilde_minus, energy, x);
    const SectionValue st_next = section_at(solver, SectionKind::s_tilde_minus, energy, tx);
    if (s.suspect || s_next.suspect || st.suspect || st_next.suspect) {
      ++r.suspect_points;
      r.sup_a = HUGE_VAL;
      r.sup_a_tilde = HUGE_VAL;
      r.worst_index = i;
      continue;
    }
    const Mat2 a = cocycle_matrix(m, CocycleKind::A, energy, x);
    const Mat2 at = cocycle_matrix(m, CocycleKind::A_tilde, energy, x);
    const double da = chordal_distance(mobius(a, s.value), s_next.value);
    const double dt = chordal_distance(mobius(at, st.value), st_next.value);
    if (da > r.sup_a) {
      r.sup_a = da;
      r.worst_index = i;
    }
    r.sup_a_tilde = std::max(r.sup_a_tilde, dt);
  }
  return r;
}

cplx green_diag(const JacobiModel& m, cplx energy, std::span<const double> x,
                const TruncationPolicy& policy) {
  WeylSolver solver(m, policy);
  const SectionValue sm = section_at(solver, SectionKind::s_minus, energy, x);
  const SectionValue sp = section_at(solver, SectionKind::s_plus, energy, x);
  if (sm.suspect || sp.suspect) {
    throw DomainError("green_diag: sections are not defined at this energy");
  }
  const cplx c_prev = m.c_at(m.translate(x, -1));
  cplx inverse;
  if (!sm.value.infinite && !sp.value.infinite) {
    inverse = std::conj(c_prev) * (sm.value.value - sp.value.value);
  } else {
    // conj(c) s_- = -|c|^2 m_-(x) and conj(c) s_+ = -1 / m_+(T^-1 x).
    const ExtComplex inv_mplus = ext_reciprocal(sp.m.value);
    if (inv_mplus.infinite || sm.m.value.infinite) return 0.0;
    inverse = inv_mplus.value - std::norm(c_prev) * sm.m.value.value;
  }
  if (std::abs(inverse) <= 1e-14) {
    throw DomainError("green_diag: s_+ and s_- coincide; energy too close to the spectrum");
  }
  return 1.0 / inverse;
}

cplx green_diag_direct(const JacobiModel& m, cplx energy, std::span<const double> x, long size) {
  if (size < 1) throw UsageError("green_diag_direct: size must be positive");
  OrbitTable table(m);
  Orbit orbit(table, TorusPoint(x.begin(), x.end()));
  const auto n = static_cast<std::size_t>(2 * size + 1);
  std::vector<cplx> sub(n - 1), diag(n), super(n - 1), rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const long site = -size + static_cast<long>(i);
    diag[i] = orbit.v(site) - energy;
    if (i + 1 < n) {
      super[i] = orbit.c(site);
      sub[i] = std::conj(super[i]);
    }
  }
  rhs[static_cast<std::size_t>(size)] = 1.0;
  if (linalg::solve_tridiagonal(sub, diag, super, rhs) != 0) {
    throw DomainError("green_diag_direct: energy is an eigenvalue of the truncation");
  }
  return rhs[static_cast<std::size_t>(size)];
}

double transversality_gap(const JacobiModel& m, cplx energy, const PhaseGrid& grid,
                          const TruncationPolicy& policy) {
  WeylSolver solver(m, policy);
  double gap = HUGE_VAL;
  for (const auto& x : grid.points()) {
    const SectionValue sm = section_at(solver, SectionKind::s_minus, energy, x);
    const SectionValue sp = section_at(solver, SectionKind::s_plus, energy, x);
    if (sm.suspect || sp.suspect) return 0.0;
    const double d = (sm.value.infinite || sp.value.infinite)
                         ? chordal_distance(sm.value, sp.value)
                         : std::abs(sp.value.value - sm.value.value);
    gap = std::min(gap, d);
  }
  return gap;
}

namespace {

void write_row(std::ostream& os, const TorusPoint& x, const ExtComplex& v, long truncation,
               double residual) {
  for (double xi : x) os << to_text(xi) << ',';
  os << to_text(v.infinite ? 0.0 : v.value.real()) << ',' << to_text(v.infinite ? 0.0 : v.value.imag())
     << ',' << (v.infinite ? 1 : 0) << ',' << truncation << ',' << to_text(residual) << '\n';
}

void write_header(std::ostream& os, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) os << "x" << i << ',';
  os << "re,im,is_infinity,truncation_M,residual\n";
}

}  // namespace

void write_csv(std::ostream& os, const MField& f) {
  write_header(os, f.points.empty() ? 1 : f.points.front().size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    write_row(os, f.points[i], f.values[i].value, f.values[i].truncation, f.values[i].residual);
  }
}

void write_csv(std::ostream& os, const SectionField& f) {
  write_header(os, f.points.empty() ? 1 : f.points.front().size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    write_row(os, f.points[i], f.values[i].value, f.values[i].m.truncation, f.values[i].m.residual);
  }
}

}  // namespace qpj
