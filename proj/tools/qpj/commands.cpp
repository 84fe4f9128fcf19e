#include "qpj/commands.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qpj/domination.hpp"
#include "qpj/errors.hpp"
#include "qpj/format.hpp"
#include "qpj/model_file.hpp"
#include "qpj/scan_io.hpp"
#include "qpj/svg.hpp"
#include "qpj/weyl.hpp"

namespace qpj::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

CocycleKind parse_kind(const std::string& s) {
  if (s == "A") return CocycleKind::A;
  if (s == "A_tilde") return CocycleKind::A_tilde;
  throw UsageError("--kind must be A or A_tilde");
}

SectionKind parse_section(const std::string& s) {
  for (auto k : {SectionKind::s_minus, SectionKind::s_plus, SectionKind::s_tilde_minus, SectionKind::s_tilde_plus}) {
    if (s == to_string(k)) return k;
  }
  throw UsageError("--section must be s_minus, s_plus, s_tilde_minus or s_tilde_plus");
}

void check(const RunConfig& c) {
  if (c.phases < 1 || c.trunc_phases < 1 || c.n_max < 1 || c.le_steps < 2 || c.le_phases < 1 ||
      c.workers < 1 || !(c.step > 0.0) || !(c.tolerance > 0.0)) {
    throw UsageError("numeric options must be positive");
  }
  if (!(c.margin > 0.0 && c.margin < 1.0)) throw UsageError("--margin must lie in (0, 1)");
  if (c.trunc_sizes.empty()) throw UsageError("--trunc-sizes needs at least one size");
}

std::string point_text(const TorusPoint& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + to_text(x[i]);
  return s;
}

}  // namespace

JacobiModel load(const RunConfig& c) {
  if (!c.model_path.empty() && !c.preset.empty()) throw UsageError("give either --model or --preset, not both");
  if (!c.model_path.empty()) return load_model(c.model_path);
  if (!c.preset.empty()) return presets::by_name(c.preset, c.lambda, c.alpha);
  throw UsageError("a model is required: --model FILE or --preset NAME");
}

ScanConfig scan_config(const RunConfig& c) {
  check(c);
  ScanConfig s;
  s.e_min = c.e_min;
  s.e_max = c.e_max;
  s.step = c.step;
  s.phases = c.phases;
  s.detector.n_max = c.n_max;
  s.detector.margin = c.margin;
  s.detector.truncation.tolerance = c.tolerance;
  s.le = LyapunovScheme::orbit(c.le_steps, c.le_phases, c.seed);
  s.trunc_sizes = c.trunc_sizes;
  s.trunc_phases = c.trunc_phases;
  s.workers = c.workers;
  return s;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const JacobiModel m = load(c);
  out << "model: " << m.label() << " (d = " << m.dim() << ")\n";
  out << "alpha:";
  for (double a : m.alpha()) out << ' ' << to_text(a);
  out << "\nv real-valued: yes\nc nonzero: yes\n";
  if (m.dim() == 1) {
    const auto& z = m.c_zeros();
    if (z.empty()) {
      out << "no zeros of c\n";
    } else {
      out << "c has " << z.size() << (z.size() == 1 ? " zero" : " zeros") << " at x =";
      for (double x : z) out << ' ' << to_text(x);
      out << '\n';
    }
  } else {
    out << "zeros of c: not enumerated for d > 1\n";
  }
  out << "int log|c| = " << to_text(m.mean_log_c()) << '\n';
  out << "|c|_sup ~ " << to_text(m.c_sup()) << "\n|v|_sup ~ " << to_text(m.v_sup()) << '\n';
  for (const auto& w : m.warnings()) out << "warning: " << w << '\n';
  return kOk;
}

int cmd_scan(const RunConfig& c, std::ostream& out) {
  const JacobiModel m = load(c);
  const ScanConfig cfg = scan_config(c);
  const ScanResult r = scan(m, cfg);
  const CombesThomasReport ct = combes_thomas_check(r.rows);
  ensure_dir(c.out);
  persist(c.out / "scan.csv", c.out / "summary.json", m, cfg, r, ct);
  write_file(c.out / "bands.svg", svg::band_plot(m.label() + ": dominated splitting scan", r.rows, r.summary));
  out << "energies: " << r.rows.size() << " (DS " << r.summary.ds << ", NO_DS " << r.summary.no_ds
      << ", UNDET " << r.summary.undetermined << ")\n";
  out << "spectrum estimate:";
  for (const auto& iv : r.summary.sigma_estimate) out << " [" << to_text(iv.lo) << ", " << to_text(iv.hi) << "]";
  out << "\nhausdorff(NO_DS, truncation spectrum) = " << to_text(r.summary.hausdorff)
      << "\ncoverage radius = " << to_text(r.summary.coverage_radius)
      << "\ncombes-thomas: " << ct.violations << " violations, kappa = " << to_text(ct.kappa) << '\n';
  out << "wrote " << (c.out / "scan.csv").string() << ", summary.json, bands.svg\n";
  return kOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  const JacobiModel m = load(c);
  const ScanConfig cfg = scan_config(c);
  const DominationCertificate cert =
      certify(m, c.energy, PhaseGrid::uniform(m.dim(), c.phases), parse_kind(c.kind), cfg.detector);
  out << "energy: " << to_text(c.energy) << "\nstatus: " << to_string(cert.status) << "\nN: " << cert.n
      << "\ncontraction_sup: " << to_text(cert.contraction_sup)
      << "\ntransversality_min: " << to_text(cert.transversality_min)
      << "\nkernel_clearance: " << to_text(cert.kernel_clearance) << "\nlambda_gap: " << to_text(cert.lambda_gap)
      << "\nsv_gap: " << to_text(cert.sv_gap) << "\ndiagnostics: " << cert.diagnostics << '\n';
  if (!cert.profile.empty()) {
    out << "profile:\n  N  sup|d(A_N . s_-)|\n";
    for (const auto& p : cert.profile) out << "  " << p.n << "  " << to_text(p.sup) << '\n';
  }
  return kOk;
}

int cmd_le_curve(const RunConfig& c, std::ostream& out) {
  const JacobiModel m = load(c);
  const ScanConfig cfg = scan_config(c);
  const auto energies = energy_grid(c.e_min, c.e_max, c.step);
  std::vector<LERelationReport> reports(energies.size());
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  for (unsigned w = 0; w < c.workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < energies.size(); i = next++) {
        try {
          reports[i] = le_relation_report(m, energies[i], cfg.le);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::ostringstream csv;
  csv << "energy,L_A,L_A_tilde,L_B,mean_log_c,residual_a_tilde,residual_b\n";
  svg::Series a{"L(A)", {}, {}, "#1f77b4"}, at{"L(A~)", {}, {}, "#2ca02c"}, b{"L(B)", {}, {}, "#d62728"};
  double worst = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const auto& r = reports[i];
    csv << to_text(energies[i]) << ',' << to_text(r.a.value) << ',' << to_text(r.a_tilde.value) << ','
        << to_text(r.b.value) << ',' << to_text(r.mean_log_c) << ',' << to_text(r.residual_a_tilde) << ','
        << to_text(r.residual_b) << '\n';
    for (auto* s : {&a, &at, &b}) s->x.push_back(energies[i]);
    a.y.push_back(r.a.value);
    at.y.push_back(r.a_tilde.value);
    b.y.push_back(r.b.value);
    worst = std::max({worst, std::abs(r.residual_a_tilde), std::abs(r.residual_b)});
  }
  ensure_dir(c.out);
  write_file(c.out / "le_curve.csv", csv.str());
  write_file(c.out / "le_curve.svg", svg::line_plot(m.label() + ": Lyapunov exponents", "E", "L", {a, at, b}));
  out << "energies: " << energies.size() << "\nmax identity residual: " << to_text(worst) << "\nwrote "
      << (c.out / "le_curve.csv").string() << ", le_curve.svg\n";
  return kOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const JacobiModel m = load(c);
  check(c);
  TruncationOptions opt;
  opt.workers = c.workers;
  const TruncationSpectrum t =
      truncation_spectrum(m, c.trunc_sizes, default_truncation_phases(m.dim(), c.trunc_phases), opt);
  std::ostringstream csv;
  csv << "eigenvalue\n";
  for (double e : t.eigenvalues) csv << to_text(e) << '\n';
  ensure_dir(c.out);
  write_file(c.out / "spectrum.csv", csv.str());
  out << "eigenvalues: " << t.eigenvalues.size() << " (edge states dropped: " << t.edge_states << ")\n";
  if (!t.eigenvalues.empty()) {
    out << "range: [" << to_text(t.eigenvalues.front()) << ", " << to_text(t.eigenvalues.back()) << "]\n";
  }
  out << "coverage radius: " << to_text(t.coverage_radius) << '\n';
  for (const auto& d : t.diagnostics) out << "skipped block: " << d << '\n';
  out << "wrote " << (c.out / "spectrum.csv").string() << '\n';
  return kOk;
}

int cmd_sections(const RunConfig& c, std::ostream& out) {
  const JacobiModel m = load(c);
  const ScanConfig cfg = scan_config(c);
  const SectionKind kind = parse_section(c.section);
  const SectionField f =
      sections(m, c.energy, PhaseGrid::uniform(m.dim(), c.phases), kind, cfg.detector.truncation);
  std::ostringstream csv;
  write_csv(csv, f);
  ensure_dir(c.out);
  const auto path = c.out / (std::string(to_string(kind)) + ".csv");
  write_file(path, csv.str());
  std::size_t suspect = 0;
  for (const auto& v : f.values) suspect += v.suspect ? 1 : 0;
  out << "points: " << f.values.size() << " (suspect " << suspect << ")\nwrote " << path.string() << '\n';
  if (suspect > 0) {
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      if (f.values[i].suspect) {
        out << "first suspect point: x = " << point_text(f.points[i]) << '\n';
        break;
      }
    }
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Dominated splitting and spectra of quasi-periodic Jacobi operators"};
  app.require_subcommand(1);
  const std::function<void(CLI::App*)> model_opts = [&](CLI::App* s) {
    s->add_option("--model", c.model_path, "Model file");
    s->add_option("--preset", c.preset, "free | almost-mathieu | singular-harper");
    s->add_option("--lambda", c.lambda, "Coupling of the preset potential");
    s->add_option("--alpha", c.alpha, "Frequency of the preset");
  };
  const std::function<void(CLI::App*)> window = [&](CLI::App* s) {
    s->add_option("--emin", c.e_min);
    s->add_option("--emax", c.e_max);
    s->add_option("--step", c.step);
  };
  const std::function<void(CLI::App*)> detector = [&](CLI::App* s) {
    s->add_option("--phases", c.phases, "Phase grid points per dimension");
    s->add_option("--nmax", c.n_max);
    s->add_option("--margin", c.margin);
    s->add_option("--tolerance", c.tolerance, "m-function truncation tolerance");
  };
  const std::function<void(CLI::App*)> le = [&](CLI::App* s) {
    s->add_option("--le-steps", c.le_steps);
    s->add_option("--le-phases", c.le_phases);
    s->add_option("--seed", c.seed);
  };
  const std::function<void(CLI::App*)> trunc = [&](CLI::App* s) {
    s->add_option("--trunc-sizes", c.trunc_sizes)->delimiter(',');
    s->add_option("--trunc-phases", c.trunc_phases);
  };
  const std::function<void(CLI::App*)> common = [&](CLI::App* s) {
    s->add_option("--workers", c.workers);
    s->add_option("--out", c.out, "Output directory");
  };

  auto* validate = app.add_subcommand("validate", "Check a model and report its zeros and norms");
  model_opts(validate);
  auto* scan_cmd = app.add_subcommand("scan", "Classify an energy window and compare with the truncation spectrum");
  for (auto f : {model_opts, window, detector, le, trunc, common}) f(scan_cmd);
  auto* certify_cmd = app.add_subcommand("certify", "Certificate at one energy");
  for (auto f : {model_opts, detector, common}) f(certify_cmd);
  certify_cmd->add_option("--energy,-E", c.energy)->required();
  certify_cmd->add_option("--kind", c.kind, "A | A_tilde");
  auto* le_cmd = app.add_subcommand("le-curve", "Lyapunov exponents of A, A_tilde and B over a window");
  for (auto f : {model_opts, window, le, common}) f(le_cmd);
  auto* spec_cmd = app.add_subcommand("spectrum", "Eigenvalues of finite sections");
  for (auto f : {model_opts, trunc, common}) f(spec_cmd);
  auto* sec_cmd = app.add_subcommand("sections", "Invariant sections on a phase grid");
  for (auto f : {model_opts, detector, common}) f(sec_cmd);
  sec_cmd->add_option("--energy,-E", c.energy)->required();
  sec_cmd->add_option("--section", c.section, "s_minus | s_plus | s_tilde_minus | s_tilde_plus");
  sec_cmd->callback([&] {
    if (c.kind == "A") c.kind = "s_minus";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(c, out);
    if (scan_cmd->parsed()) return cmd_scan(c, out);
    if (certify_cmd->parsed()) return cmd_certify(c, out);
    if (le_cmd->parsed()) return cmd_le_curve(c, out);
    if (spec_cmd->parsed()) return cmd_spectrum(c, out);
    if (sec_cmd->parsed()) return cmd_sections(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace qpj::cli
