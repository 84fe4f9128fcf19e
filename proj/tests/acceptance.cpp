// End-to-end checks: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpj/cocycle.hpp"
#include "qpj/commands.hpp"
#include "qpj/domination.hpp"
#include "qpj/projective.hpp"
#include "qpj/spectrum.hpp"
#include "qpj/weyl.hpp"

using namespace qpj;

namespace {

const double kSqrt5 = std::sqrt(5.0);
const double kFreeL = std::log((3.0 + kSqrt5) / 2.0);

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", x);
  return buf;
}

std::vector<JacobiModel> all_presets() {
  return {presets::free_model(), presets::almost_mathieu(0.5), presets::singular_harper(0.5)};
}

// Full-window scans shared by several criteria.
struct Scans {
  ScanResult free_model, amo, singular;
};

ScanResult run_scan(const JacobiModel& m) {
  ScanConfig cfg;  // [-3, 3] step 0.01, 512 phases, truncations 512/1024 at 8 phases
  return scan(m, cfg);
}

Outcome c1(const Scans& s) {
  Outcome o;
  std::size_t bad_ds = 0, bad_no = 0, bad_undet = 0;
  for (const auto& r : s.free_model.rows) {
    const double a = std::abs(r.energy);
    const DSStatus st = r.certificate.status;
    if (a >= 2.05 - 1e-9 && st != DSStatus::DS) ++bad_ds;
    if (a <= 1.95 + 1e-9 && st != DSStatus::NO_DS) ++bad_no;
    if (st == DSStatus::UNDETERMINED && (a < 1.95 - 1e-9 || a > 2.05 + 1e-9)) ++bad_undet;
  }
  o.require(bad_ds == 0, "non-DS with |E| >= 2.05: " + std::to_string(bad_ds));
  o.require(bad_no == 0, "non-NO_DS with |E| <= 1.95: " + std::to_string(bad_no));
  o.require(bad_undet == 0, "UNDET outside the edge bands: " + std::to_string(bad_undet));
  o.require(true, "rows " + std::to_string(s.free_model.rows.size()));
  return o;
}

Outcome c2(const Scans& s) {
  Outcome o;
  o.require(s.amo.summary.hausdorff <= 0.05, "hausdorff " + fmt(s.amo.summary.hausdorff));
  return o;
}

Outcome c3(const Scans& s) {
  Outcome o;
  o.require(s.singular.summary.hausdorff <= 0.05, "hausdorff " + fmt(s.singular.summary.hausdorff) +
                                                      " (truncation coverage radius " +
                                                      fmt(s.singular.summary.coverage_radius) + ")");
  std::size_t kernel_ds = 0;
  double example = NAN;
  for (const auto& r : s.singular.rows) {
    if (r.certificate.status == DSStatus::DS && std::isfinite(r.certificate.kernel_clearance)) {
      if (kernel_ds++ == 0) example = r.energy;
    }
  }
  o.require(kernel_ds > 0, "DS certificates with a kernel phase on the grid: " + std::to_string(kernel_ds) +
                               " (first at E = " + fmt(example) + ")");
  return o;
}

Outcome c4() {
  Outcome o;
  double worst_t = 0.0, worst_b = 0.0;
  for (const auto& m : all_presets()) {
    for (cplx e : {cplx(2.0, 0.5), cplx(3.0, 0.0)}) {
      const auto r = le_relation_report(m, e);
      worst_t = std::max(worst_t, std::abs(r.residual_a_tilde));
      worst_b = std::max(worst_b, std::abs(r.residual_b));
    }
  }
  o.require(worst_t <= 2e-3, "max |L(A)-L(A~)| " + fmt(worst_t));
  o.require(worst_b <= 2e-3, "max |L(B)-(L(A)-int log|c|)| " + fmt(worst_b));
  return o;
}

Outcome c5() {
  Outcome o;
  const auto l = lyapunov(presets::free_model(), CocycleKind::A, 3.0);
  o.require(std::abs(l.value - 0.9624236) <= 1e-5 && std::abs(l.value - kFreeL) <= 1e-5, "L = " + fmt(l.value));
  return o;
}

Outcome c6() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t bound_violations = 0;
  double riccati = 0.0;
  const auto models = all_presets();
  for (int i = 0; i < 100; ++i) {
    const JacobiModel& m = models[static_cast<std::size_t>(i) % models.size()];
    const cplx e(-4.0 + 8.0 * u(rng), 0.1 + 1.9 * u(rng));
    const TorusPoint x{u(rng)};
    WeylSolver solver(m);
    for (auto side : {HalfLine::minus, HalfLine::plus}) {
      const MValue v = solver.adaptive(side, e, x);
      if (v.value.infinite || !(std::abs(v.value.value) < 1.0 / e.imag())) ++bound_violations;
      if (side == HalfLine::minus) {
        const ExtComplex r = m_minus_riccati(m, e, x, 20000);
        riccati = std::max(riccati, std::abs(r.value - v.value.value));
      }
    }
  }
  o.require(bound_violations == 0, "bound violations " + std::to_string(bound_violations));
  o.require(riccati <= 1e-6, "max Riccati-truncation gap " + fmt(riccati));
  return o;
}

// Energies at distance >= `dist` from the truncation spectrum: gap energies first, then
// energies beyond the operator bound.
std::vector<double> far_energies(const JacobiModel& m, const TruncationSpectrum& t, double dist, std::size_t n) {
  std::vector<double> out;
  const double b = m.operator_bound();
  auto add = [&](double e) {
    if (out.size() >= n || distance_to(t.eigenvalues, e) < dist) return;
    for (double f : out) {
      if (std::abs(f - e) <= 0.1) return;
    }
    out.push_back(e);
  };
  for (double e = -b; e <= b; e += 0.01) add(e);
  for (double e : {b + 0.5, -b - 0.5, b + 1.5, -b - 1.5}) add(e);
  return out;
}

Outcome c7(const Scans& s) {
  Outcome o;
  const std::vector<const TruncationSpectrum*> ts{&s.free_model.truncation, &s.amo.truncation,
                                                  &s.singular.truncation};
  const auto models = all_presets();
  const PhaseGrid grid = PhaseGrid::uniform(1, 2048);
  for (std::size_t k = 0; k < models.size(); ++k) {
    const auto es = far_energies(models[k], *ts[k], 0.2, 3);
    double worst = 0.0;
    std::size_t suspect = 0;
    for (double e : es) {
      const auto r = invariance_residual(models[k], e, grid);
      worst = std::max(worst, r.sup_a);
      suspect += r.suspect_points;
    }
    o.require(es.size() == 3 && worst <= 1e-7 && suspect == 0,
              models[k].label() + " residual " + fmt(worst) + " at " + std::to_string(es.size()) + " energies");
  }
  return o;
}

Outcome c8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto models = all_presets();
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const JacobiModel& m = models[static_cast<std::size_t>(done) % models.size()];
    const cplx e(-4.0 + 8.0 * u(rng), u(rng) < 0.5 ? 0.0 : u(rng));
    const TorusPoint x{u(rng)};
    const cplx z(-2.0 + 4.0 * u(rng), -2.0 + 4.0 * u(rng));
    const Mat2 a = cocycle_matrix(m, CocycleKind::A, e, x);
    const ExtComplex w = mobius(a, ExtComplex::finite(z));
    if (w.infinite || std::abs(w.value) > 1e3) continue;  // too close to a pole for a finite difference
    const double h = 1e-4 * (1.0 + std::abs(z));
    const cplx fd = (mobius(a, ExtComplex::finite(z + h)).value - mobius(a, ExtComplex::finite(z - h)).value) / (2.0 * h);
    const cplx d = proj_derivative(m, e, x, z);
    worst = std::max(worst, std::abs(d - fd) / std::max(std::abs(d), 1e-300));
    ++done;
  }
  o.require(worst <= 1e-6, "max relative error vs central difference " + fmt(worst));
  const auto model = presets::free_model();
  WeylSolver solver(model);
  const TorusPoint x{0.3};
  const SectionValue s = section_at(solver, SectionKind::s_minus, 3.0, x);
  const double at_s = std::abs(proj_derivative(model, 3.0, x, s.value.value));
  o.require(std::abs(at_s - 0.1458980) <= 1e-6, "free E=3 at s_-: " + fmt(at_s));
  return o;
}

Outcome c9(const Scans& s) {
  Outcome o;
  std::vector<int> ns;
  for (int n = 4; n <= 32; ++n) ns.push_back(n);
  const auto f = decay_rate_check(presets::free_model(), 3.0, ns);
  o.require(f.relative_error <= 0.05, "free slope " + fmt(f.slope) + " vs " + fmt(f.expected));
  const auto amo = presets::almost_mathieu(0.5);
  const auto es = far_energies(amo, s.amo.truncation, 0.5, 1);
  const auto a = decay_rate_check(amo, es.front(), ns);
  o.require(a.relative_error <= 0.10,
            "AMO E=" + fmt(es.front()) + " slope " + fmt(a.slope) + " vs " + fmt(a.expected));
  return o;
}

Outcome c10(const Scans& s) {
  Outcome o;
  const std::vector<const ScanResult*> rs{&s.free_model, &s.amo, &s.singular};
  const auto models = all_presets();
  for (std::size_t k = 0; k < models.size(); ++k) {
    std::vector<const ScanRow*> ds;
    for (const auto& r : rs[k]->rows) {
      if (r.certificate.status == DSStatus::DS) ds.push_back(&r);
    }
    std::size_t checked = 0, bad = 0;
    double worst_margin = INFINITY;
    for (std::size_t i = 0; i < 5 && !ds.empty(); ++i) {
      const ScanRow& r = *ds[i * (ds.size() - 1) / 4];
      const double lower = r.dist_trunc / models[k].c_sup() - 0.02;
      const double gap = r.certificate.transversality_min;
      worst_margin = std::min(worst_margin, gap - lower);
      bad += gap >= lower ? 0 : 1;
      ++checked;
    }
    o.require(checked == 5 && bad == 0, models[k].label() + " min(gap - bound) " + fmt(worst_margin));
  }
  const double g = transversality_gap(presets::free_model(), 3.0, PhaseGrid::uniform(1, 512));
  o.require(std::abs(g - 2.2360680) <= 1e-5, "free E=3 gap " + fmt(g));
  return o;
}

Outcome c11() {
  Outcome o;
  const auto f = presets::free_model();
  const TorusPoint x{0.3};
  const cplx weyl = green_diag(f, 3.0, x);
  const cplx direct = green_diag_direct(f, 3.0, x, 200);
  o.require(std::abs(weyl + 1.0 / kSqrt5) <= 1e-6, "sections " + fmt(weyl.real()));
  o.require(std::abs(direct + 1.0 / kSqrt5) <= 1e-6, "direct " + fmt(direct.real()));
  return o;
}

Outcome c12(const Scans& s) {
  Outcome o;
  for (const auto* r : {&s.free_model, &s.amo, &s.singular}) {
    const auto ct = combes_thomas_check(r->rows);
    o.require(ct.violations == 0, std::to_string(ct.checked) + " DS rows, " + std::to_string(ct.violations) +
                                      " violations, kappa " + fmt(ct.kappa));
  }
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Outcome c13() {
  Outcome o;
  const auto base = std::filesystem::temp_directory_path() / "qpj_acceptance_determinism";
  std::filesystem::remove_all(base);
  std::vector<std::string> csvs;
  for (unsigned workers : {1u, 1u, 4u}) {
    cli::RunConfig c;
    c.preset = "singular-harper";
    c.e_min = -1.0;
    c.e_max = 1.0;
    c.step = 0.05;
    c.phases = 128;
    c.le_steps = 20000;
    c.trunc_sizes = {256, 512};
    c.workers = workers;
    c.out = base / std::to_string(csvs.size());
    std::ostringstream sink;
    if (cli::cmd_scan(c, sink) != 0) o.require(false, "cmd_scan failed");
    csvs.push_back(slurp(c.out / "scan.csv"));
  }
  const bool same = !csvs[0].empty() && csvs[0] == csvs[1] && csvs[0] == csvs[2];
  o.require(same, "3 runs (workers 1, 1, 4), " + std::to_string(csvs[0].size()) + " bytes each");
  return o;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  Scans s;
  s.free_model = run_scan(presets::free_model());
  s.amo = run_scan(presets::almost_mathieu(0.5));
  s.singular = run_scan(presets::singular_harper(0.5));
  const double scan_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  std::printf("scans: %.1f s\n", scan_seconds);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"free-model classification", [&] { return c1(s); }},
      {"AMO spectrum match", [&] { return c2(s); }},
      {"singular model spectrum match and kernel-phase DS", [&] { return c3(s); }},
      {"LE identities", c4},
      {"constant-cocycle LE", c5},
      {"m-function bound and Riccati agreement", c6},
      {"section invariance", [&] { return c7(s); }},
      {"projective derivative", c8},
      {"contraction rate", [&] { return c9(s); }},
      {"transversality bound", [&] { return c10(s); }},
      {"Green's function", c11},
      {"Combes-Thomas positivity", [&] { return c12(s); }},
      {"determinism", c13},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t = clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(clock::now() - t).count();
    std::printf("%s %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
