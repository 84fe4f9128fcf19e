#include "qpj/domination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qpj/errors.hpp"
#include "qpj/format.hpp"

namespace qpj {

const char* to_string(DSStatus s) {
  switch (s) {
    case DSStatus::DS: return "DS";
    case DSStatus::NO_DS: return "NO_DS";
    case DSStatus::UNDETERMINED: return "UNDET";
  }
  return "?";
}

DSStatus ds_status_from_string(const std::string& s) {
  if (s == "DS") return DSStatus::DS;
  if (s == "NO_DS") return DSStatus::NO_DS;
  if (s == "UNDET" || s == "UNDETERMINED") return DSStatus::UNDETERMINED;
  throw std::invalid_argument("unknown DS status '" + s + "'");
}

cplx proj_derivative(const JacobiModel& m, cplx energy, std::span<const double> x, cplx z,
                     CocycleKind kind) {
  return mobius_derivative(cocycle_matrix(m, kind, energy, x), z);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Component of a homogeneous pair that normalizes the chart in use.
cplx chart_component(cplx v1, cplx v2) {
  return std::abs(v2) <= kChartSwitch * std::abs(v1) ? v1 : v2;
}

SectionKind minus_kind(CocycleKind k) {
  return k == CocycleKind::A_tilde ? SectionKind::s_tilde_minus : SectionKind::s_minus;
}

SectionKind plus_kind(CocycleKind k) {
  return k == CocycleKind::A_tilde ? SectionKind::s_tilde_plus : SectionKind::s_plus;
}

void require_section_kind(CocycleKind k) {
  if (is_transfer_kind(k)) throw UsageError("domination is certified for A or A_tilde only");
}

// The invariant direction u = s(x) pushed along n = 1..n_max steps of the cocycle.
// log_deriv[n-1] is log|d(D_n . z)/dz| at z = s(x); log_scale[n-1] = log|D_n u| for unit u.
struct SectionOrbit {
  std::vector<double> log_deriv;
  std::vector<double> log_scale;
  std::vector<double> log_det;
  std::vector<ProjPoint> direction;
};

SectionOrbit push_section(const JacobiModel& m, CocycleKind kind, cplx energy,
                          std::span<const double> x, const ExtComplex& s, int n_max) {
  SectionOrbit out;
  const ProjPoint u = ProjPoint::from_extended(s);
  const double log_src = 2.0 * std::log(std::abs(chart_component(u.v1(), u.v2())));
  cplx w1 = u.v1();
  cplx w2 = u.v2();
  double scale = 0.0;
  double det = 0.0;
  bool dead = false;
  for (int n = 1; n <= n_max; ++n) {
    if (!dead) {
      const Mat2 d = cocycle_matrix(m, kind, energy, m.translate(x, n - 1));
      det += std::log(std::abs(d.det()));
      const auto [y1, y2] = apply(d, w1, w2);
      const double nrm = std::hypot(std::abs(y1), std::abs(y2));
      if (nrm == 0.0 || !std::isfinite(nrm)) {
        dead = true;  // section fell into the kernel
      } else {
        w1 = y1 / nrm;
        w2 = y2 / nrm;
        scale += std::log(nrm);
      }
    }
    if (dead) {
      out.log_deriv.push_back(kInf);
      out.log_scale.push_back(-kInf);
      out.log_det.push_back(det);
      out.direction.push_back(ProjPoint::from_pair(w1, w2));
      continue;
    }
    const double log_tgt = 2.0 * (std::log(std::abs(chart_component(w1, w2))) + scale);
    out.log_deriv.push_back(det == -kInf ? -kInf : det + log_src - log_tgt);
    out.log_scale.push_back(scale);
    out.log_det.push_back(det);
    out.direction.push_back(ProjPoint::from_pair(w1, w2));
  }
  return out;
}

std::vector<ProfilePoint> profile_from(const std::vector<SectionOrbit>& orbits, int n_max) {
  std::vector<ProfilePoint> profile;
  for (int n = 1; n <= n_max; ++n) {
    double sup = -kInf;
    for (const auto& o : orbits) sup = std::max(sup, o.log_deriv[static_cast<std::size_t>(n - 1)]);
    profile.push_back({n, std::exp(sup)});
  }
  return profile;
}

std::string point_text(const TorusPoint& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += to_text(x[i]);
  }
  return s + ")";
}

}  // namespace

double log_chart_derivative(const Mat2& d, const ProjPoint& u) {
  const auto [w1, w2] = apply(d, u.v1(), u.v2());
  const double log_src = 2.0 * std::log(std::abs(chart_component(u.v1(), u.v2())));
  const double log_tgt = 2.0 * std::log(std::abs(chart_component(w1, w2)));
  return std::log(std::abs(d.det())) + log_src - log_tgt;
}

std::vector<ProfilePoint> contraction_profile(const JacobiModel& m, cplx energy,
                                              const PhaseGrid& grid, int n_max, CocycleKind kind,
                                              const TruncationPolicy& policy) {
  require_section_kind(kind);
  if (n_max < 1) throw UsageError("contraction_profile: n_max must be positive");
  WeylSolver solver(m, policy);
  std::vector<SectionOrbit> orbits;
  orbits.reserve(grid.size());
  for (const auto& x : grid.points()) {
    const SectionValue s = section_at(solver, minus_kind(kind), energy, x);
    if (s.suspect) return {};
    orbits.push_back(push_section(m, kind, energy, x, s.value, n_max));
  }
  return profile_from(orbits, n_max);
}

SvGap sv_gap_crosscheck(const JacobiModel& m, cplx energy, const PhaseGrid& grid, int n,
                        CocycleKind kind) {
  if (n < 1) throw UsageError("sv_gap_crosscheck: N must be positive");
  SvGap out;
  out.rate = kInf;
  for (const auto& x : grid.points()) {
    const Product p = iterate(m, kind, energy, x, n);
    // log(s1/s2) = 2 log s1 - log|det|.
    if (p.log_abs_det == -kInf || p.log_norm == -kInf) {
      ++out.rank_deficient;
      continue;
    }
    out.rate = std::min(out.rate, (2.0 * p.log_norm - p.log_abs_det) / n);
  }
  return out;
}

DominationCertificate certify(const JacobiModel& m, cplx energy, const PhaseGrid& grid,
                              CocycleKind kind, const DetectorConfig& config) {
  require_section_kind(kind);
  if (config.n_max < 1 || !(config.margin > 0.0 && config.margin < 1.0)) {
    throw UsageError("certify: need n_max >= 1 and 0 < margin < 1");
  }
  DominationCertificate cert;
  cert.contraction_sup = std::nan("");
  cert.lambda_gap = std::nan("");
  cert.sv_gap = std::nan("");
  std::ostringstream diag;
  WeylSolver solver(m, config.truncation);
  const std::size_t count = grid.size();

  // (1) sections on the grid; a degenerate section marks E as in-spectrum-suspect.
  std::vector<ExtComplex> s_minus(count), s_plus(count);
  auto suspect = [&](const char* which, std::size_t i, const SectionValue& s) {
    cert.status = DSStatus::NO_DS;
    diag << "in-spectrum-suspect: " << which << " at x=" << point_text(grid[i]) << " (m "
         << to_string(s.m.status) << ", M=" << s.m.truncation << ", residual "
         << to_text(s.m.residual) << ")";
    cert.diagnostics = diag.str();
    return cert;
  };
  for (std::size_t i = 0; i < count; ++i) {
    const SectionValue s = section_at(solver, minus_kind(kind), energy, grid[i]);
    if (s.suspect) return suspect(to_string(minus_kind(kind)), i, s);
    s_minus[i] = s.value;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const SectionValue s = section_at(solver, plus_kind(kind), energy, grid[i]);
    if (s.suspect) return suspect(to_string(plus_kind(kind)), i, s);
    s_plus[i] = s.value;
  }

  // (2) transversality.
  cert.transversality_min = kInf;
  for (std::size_t i = 0; i < count; ++i) {
    const double d = (s_minus[i].infinite || s_plus[i].infinite)
                         ? chordal_distance(s_minus[i], s_plus[i])
                         : std::abs(s_plus[i].value - s_minus[i].value);
    cert.transversality_min = std::min(cert.transversality_min, d);
  }
  if (!(cert.transversality_min > config.transversality_floor)) {
    cert.status = DSStatus::NO_DS;
    diag << "sections coincide: transversality_min " << to_text(cert.transversality_min);
    cert.diagnostics = diag.str();
    return cert;
  }

  // (3) clearance of s_- from the kernel at phases where the cocycle is singular.
  cert.kernel_clearance = kInf;
  std::size_t kernel_phases = 0;
  const double det_tol = config.kernel_det_tol * (1.0 + m.c_sup() * m.c_sup());
  for (std::size_t i = 0; i < count; ++i) {
    const Mat2 d = cocycle_matrix(m, kind, energy, grid[i]);
    if (std::abs(d.det()) > det_tol) continue;
    ++kernel_phases;
    const double clearance =
        chordal_distance(ProjPoint::from_extended(s_minus[i]), kernel_direction(d));
    cert.kernel_clearance = std::min(cert.kernel_clearance, clearance);
  }
  if (kernel_phases > 0) diag << "kernel phases on grid: " << kernel_phases << "; ";
  if (!(cert.kernel_clearance > 0.0)) {
    diag << "s_- meets ker A";
    cert.diagnostics = diag.str();
    return cert;
  }

  // (4) least N with a uniformly contracting section.
  std::vector<SectionOrbit> orbits;
  orbits.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    orbits.push_back(push_section(m, kind, energy, grid[i], s_minus[i], config.n_max));
  }
  cert.profile = profile_from(orbits, config.n_max);
  const double bound = 1.0 - config.margin;
  double best = kInf;
  for (const auto& p : cert.profile) {
    best = std::min(best, p.sup);
    if (p.sup <= bound) {
      cert.n = p.n;
      break;
    }
  }
  if (cert.n == 0) {
    cert.contraction_sup = best;
    std::vector<TorusPoint> pts;
    const std::size_t k = std::max<std::size_t>(1, std::min(config.no_ds_phases, count));
    for (std::size_t j = 0; j < k; ++j) pts.push_back(grid[j * count / k]);
    double rate = kInf;
    for (const auto& x : pts) {
      const Product p = iterate(m, kind, energy, x, config.no_ds_window);
      if (p.log_abs_det == -kInf || p.log_norm == -kInf) continue;
      rate = std::min(rate, (2.0 * p.log_norm - p.log_abs_det) / config.no_ds_window);
    }
    cert.sv_gap = rate;
    diag << "no contraction up to N=" << config.n_max << " (best sup " << to_text(best)
         << "); long-window sv-gap rate " << to_text(rate);
    if (rate < config.no_ds_rate) {
      cert.status = DSStatus::NO_DS;
      diag << " below " << to_text(config.no_ds_rate) << ": no gap growth";
    }
    cert.diagnostics = diag.str();
    return cert;
  }
  const auto at_n = static_cast<std::size_t>(cert.n - 1);
  cert.contraction_sup = cert.profile[at_n].sup;

  // (5) N-step diagonal conjugacy along (S_-, S_+): log|prod l1| - log|prod l2|
  //   = 2 log|D_N u_-| - log|det D_N| - log|u_- ^ u_+|(x) + log|u_- ^ u_+|(T^N x).
  cert.lambda_gap = kInf;
  for (std::size_t i = 0; i < count; ++i) {
    const SectionOrbit& o = orbits[i];
    if (o.log_det[at_n] == -kInf) continue;  // product is rank one: l2 = 0
    const TorusPoint xn = m.translate(grid[i], cert.n);
    const SectionValue sp = section_at(solver, plus_kind(kind), energy, xn);
    if (sp.suspect) {
      diag << "s_+ undefined at T^N x=" << point_text(xn);
      cert.diagnostics = diag.str();
      return cert;
    }
    const ProjPoint um = ProjPoint::from_extended(s_minus[i]);
    const ProjPoint up = ProjPoint::from_extended(s_plus[i]);
    const double wedge_x = 0.5 * chordal_distance(um, up);
    const double wedge_n = 0.5 * chordal_distance(o.direction[at_n], ProjPoint::from_extended(sp.value));
    const double gap = 2.0 * o.log_scale[at_n] - o.log_det[at_n] - std::log(wedge_x) + std::log(wedge_n);
    cert.lambda_gap = std::min(cert.lambda_gap, gap);
  }
  if (!(cert.lambda_gap > 0.0)) {
    diag << "diagonal conjugacy has no gap at N=" << cert.n;
    cert.diagnostics = diag.str();
    return cert;
  }

  // Independent norm-ratio check at the certified N.
  const SvGap sv = sv_gap_crosscheck(m, energy, grid, cert.n, kind);
  cert.sv_gap = sv.rate;
  if (sv.rank_deficient > 0) diag << "rank-deficient products: " << sv.rank_deficient << "; ";
  if (!(sv.rate > config.sv_gap_threshold)) {
    diag << "sv-gap rate " << to_text(sv.rate) << " below threshold at N=" << cert.n;
    cert.diagnostics = diag.str();
    return cert;
  }

  cert.status = DSStatus::DS;
  diag << "uniform contraction at N=" << cert.n;
  cert.diagnostics = diag.str();
  return cert;
}

}  // namespace qpj
