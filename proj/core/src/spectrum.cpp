#include "qpj/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "qpj/errors.hpp"
#include "qpj/linalg.hpp"
#include "qpj/orbit.hpp"

namespace qpj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs body(i) for i in [0, n) on `workers` threads pulling indices from a shared counter.
template <typename F>
void parallel_for(std::size_t n, unsigned workers, F body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      (void)w;
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct Block {
  std::vector<double> values;
  std::size_t edge_states = 0;
  std::string error;
};

Block truncation_block(const OrbitTable& table, long n, const TorusPoint& x,
                       const TruncationOptions& opt) {
  Block out;
  Orbit orbit(table, x);
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> off(static_cast<std::size_t>(n - 1));
  for (long k = 0; k < n; ++k) {
    diag[static_cast<std::size_t>(k)] = orbit.v(k);
    // The diagonal gauge exp(i arg c) makes the off-diagonal |c| without changing eigenvalues.
    if (k + 1 < n) off[static_cast<std::size_t>(k)] = std::abs(orbit.c(k));
  }
  linalg::TridiagonalEigen eig;
  try {
    eig = linalg::symmetric_tridiagonal_eigen(diag, off, opt.filter_edges);
  } catch (const std::exception& e) {
    out.error = e.what();
    return out;
  }
  if (!opt.filter_edges) {
    out.values = std::move(eig.values);
    return out;
  }
  const auto rim = static_cast<std::size_t>(std::max(1.0, std::floor(opt.edge_fraction * n)));
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t j = 0; j < un; ++j) {
    const double* vec = eig.vectors.data() + j * un;
    double left = 0.0, right = 0.0;
    for (std::size_t i = 0; i < rim; ++i) {
      left += vec[i] * vec[i];
      right += vec[un - 1 - i] * vec[un - 1 - i];
    }
    if (left > opt.edge_weight || right > opt.edge_weight) {
      ++out.edge_states;
    } else {
      out.values.push_back(eig.values[j]);
    }
  }
  return out;
}

}  // namespace

std::vector<TorusPoint> default_truncation_phases(int dim, long count) {
  if (dim < 1 || count < 1) throw UsageError("truncation phases: need dim >= 1 and count >= 1");
  std::vector<TorusPoint> out;
  for (long k = 0; k < count; ++k) {
    out.emplace_back(static_cast<std::size_t>(dim), (static_cast<double>(k) + 0.5) / static_cast<double>(count));
  }
  return out;
}

TruncationSpectrum truncation_spectrum(const JacobiModel& m, const std::vector<long>& sizes,
                                       const std::vector<TorusPoint>& phases,
                                       const TruncationOptions& options) {
  if (sizes.empty() || phases.empty()) throw UsageError("truncation_spectrum: need sizes and phases");
  for (long s : sizes) {
    if (s < 8) throw UsageError("truncation_spectrum: sizes must be at least 8");
  }
  for (const auto& x : phases) {
    if (static_cast<int>(x.size()) != m.dim()) throw UsageError("truncation_spectrum: phase dimension mismatch");
  }
  TruncationSpectrum out;
  out.sizes = sizes;
  out.phases = phases;
  const OrbitTable table(m);
  const std::size_t blocks = sizes.size() * phases.size();
  std::vector<Block> results(blocks);
  parallel_for(blocks, options.workers, [&](std::size_t b) {
    results[b] = truncation_block(table, sizes[b / phases.size()], phases[b % phases.size()], options);
  });

  std::vector<std::vector<double>> per_size(sizes.size());
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t si = b / phases.size();
    if (!results[b].error.empty()) {
      out.diagnostics.push_back("size " + std::to_string(sizes[si]) + ", phase " +
                                std::to_string(b % phases.size()) + ": " + results[b].error);
      continue;
    }
    out.edge_states += results[b].edge_states;
    per_size[si].insert(per_size[si].end(), results[b].values.begin(), results[b].values.end());
  }
  for (auto& v : per_size) {
    std::sort(v.begin(), v.end());
    out.eigenvalues.insert(out.eigenvalues.end(), v.begin(), v.end());
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  if (sizes.size() >= 2) {
    std::vector<std::size_t> order(sizes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sizes[a] < sizes[b]; });
    out.coverage_radius = hausdorff(per_size[order[order.size() - 1]], per_size[order[order.size() - 2]]);
  }
  return out;
}

double distance_to(const std::vector<double>& sorted, double e) {
  if (sorted.empty()) return kInf;
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
  double d = kInf;
  if (it != sorted.end()) d = *it - e;
  if (it != sorted.begin()) d = std::min(d, e - *std::prev(it));
  return d;
}

double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return kInf;
  std::vector<double> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double h = 0.0;
  for (double x : sa) h = std::max(h, distance_to(sb, x));
  for (double x : sb) h = std::max(h, distance_to(sa, x));
  return h;
}

std::vector<double> energy_grid(double e_min, double e_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw UsageError("energy step must be positive");
  if (!(e_min < e_max)) throw UsageError("energy window needs emin < emax");
  const auto count = static_cast<long>(std::floor((e_max - e_min) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) out.push_back(e_min + static_cast<double>(k) * step);
  return out;
}

ScanSummary summarize(const std::vector<ScanRow>& rows, const TruncationSpectrum& t) {
  ScanSummary s;
  std::vector<double> no_ds;
  bool open = false;
  for (const auto& r : rows) {
    switch (r.certificate.status) {
      case DSStatus::DS: ++s.ds; break;
      case DSStatus::NO_DS: ++s.no_ds; break;
      case DSStatus::UNDETERMINED: ++s.undetermined; break;
    }
    if (r.certificate.status == DSStatus::NO_DS) {
      no_ds.push_back(r.energy);
      if (open) {
        s.sigma_estimate.back().hi = r.energy;
      } else {
        s.sigma_estimate.push_back({r.energy, r.energy});
        open = true;
      }
    } else {
      open = false;
    }
  }
  s.undetermined_fraction = rows.empty() ? 0.0 : static_cast<double>(s.undetermined) / rows.size();
  s.hausdorff = hausdorff(no_ds, t.eigenvalues);
  s.coverage_radius = t.coverage_radius;
  return s;
}

ScanResult scan(const JacobiModel& m, const ScanConfig& config) {
  if (config.phases < 1 || config.trunc_phases < 1) throw UsageError("scan: phase counts must be positive");
  const std::vector<double> energies = energy_grid(config.e_min, config.e_max, config.step);
  ScanResult result;
  TruncationOptions topt;
  topt.workers = config.workers;
  result.truncation = truncation_spectrum(m, config.trunc_sizes,
                                          default_truncation_phases(m.dim(), config.trunc_phases), topt);
  const PhaseGrid grid = PhaseGrid::uniform(m.dim(), config.phases);
  const CocycleKind kinds[] = {CocycleKind::A, CocycleKind::B};
  result.rows.resize(energies.size());
  parallel_for(energies.size(), config.workers, [&](std::size_t i) {
    ScanRow& row = result.rows[i];
    row.energy = energies[i];
    row.certificate = certify(m, energies[i], grid, CocycleKind::A, config.detector);
    const auto le = lyapunov_multi(m, kinds, energies[i], config.le);
    row.le_a = le[0].value;
    row.le_b = le[1].value;
    row.dist_trunc = distance_to(result.truncation.eigenvalues, energies[i]);
  });
  result.summary = summarize(result.rows, result.truncation);
  return result;
}

CombesThomasReport combes_thomas_check(const std::vector<ScanRow>& rows, double kappa_floor) {
  CombesThomasReport r;
  r.kappa = kInf;
  for (const auto& row : rows) {
    if (row.certificate.status != DSStatus::DS) continue;
    ++r.checked;
    if (!(row.le_b > 0.0)) ++r.violations;
    if (row.dist_trunc > 0.0) r.kappa = std::min(r.kappa, row.le_b / row.dist_trunc);
  }
  if (r.checked == 0) r.kappa = 0.0;
  r.kappa_ok = r.violations == 0 && r.kappa >= kappa_floor;
  return r;
}

DecayRateReport decay_rate_check(const JacobiModel& m, double energy, const std::vector<int>& n_list,
                                 long phases, const LyapunovScheme& le,
                                 const TruncationPolicy& policy) {
  if (n_list.size() < 2) throw UsageError("decay_rate_check: need at least two n values");
  const int n_max = *std::max_element(n_list.begin(), n_list.end());
  if (*std::min_element(n_list.begin(), n_list.end()) < 1) throw UsageError("decay_rate_check: n must be positive");
  DecayRateReport r;
  r.profile = contraction_profile(m, energy, PhaseGrid::uniform(m.dim(), phases), n_max,
                                  CocycleKind::A, policy);
  if (r.profile.empty()) throw DomainError("decay_rate_check: sections undefined; energy is not DS");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n : n_list) {
    const double x = n;
    const double y = std::log(r.profile[static_cast<std::size_t>(n - 1)].sup);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(n_list.size());
  r.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  r.le_b = lyapunov(m, CocycleKind::B, energy, le).value;
  r.expected = -2.0 * r.le_b;
  r.relative_error = std::abs(r.slope - r.expected) / std::abs(r.expected);
  return r;
}

}  // namespace qpj
