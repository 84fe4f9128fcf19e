#include "qpj/scan_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "qpj/errors.hpp"
#include "qpj/format.hpp"

namespace qpj {

namespace {

constexpr const char* kHeader =
    "energy,status,N,contraction_sup,transversality_min,kernel_clearance,lambda_gap,le_A,le_B,dist_trunc";

// JSON has no inf/nan; those become strings.
nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return to_text(x);
}

}  // namespace

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  std::vector<const ScanRow*> order;
  for (const auto& r : rows) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const ScanRow* a, const ScanRow* b) { return a->energy < b->energy; });
  os << kHeader << '\n';
  for (const ScanRow* r : order) {
    const auto& c = r->certificate;
    os << to_text(r->energy) << ',' << to_string(c.status) << ',' << c.n << ','
       << to_text(c.contraction_sup) << ',' << to_text(c.transversality_min) << ','
       << to_text(c.kernel_clearance) << ',' << to_text(c.lambda_gap) << ',' << to_text(r->le_a)
       << ',' << to_text(r->le_b) << ',' << to_text(r->dist_trunc) << '\n';
  }
}

std::vector<ScanRow> read_scan_csv(std::istream& is) {
  std::string line;
  int line_no = 1;
  if (!std::getline(is, line) || line != kHeader) throw ParseError("expected scan CSV header", line_no);
  std::vector<ScanRow> rows;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 10) throw ParseError("expected 10 fields", line_no);
    try {
      ScanRow r;
      r.energy = from_text(f[0]);
      r.certificate.status = ds_status_from_string(f[1]);
      r.certificate.n = std::stoi(f[2]);
      r.certificate.contraction_sup = from_text(f[3]);
      r.certificate.transversality_min = from_text(f[4]);
      r.certificate.kernel_clearance = from_text(f[5]);
      r.certificate.lambda_gap = from_text(f[6]);
      r.le_a = from_text(f[7]);
      r.le_b = from_text(f[8]);
      r.dist_trunc = from_text(f[9]);
      rows.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return rows;
}

std::string summary_json(const JacobiModel& m, const ScanConfig& config, const ScanResult& result,
                         const CombesThomasReport& ct) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["model"] = m.label();
  ordered_json alpha = ordered_json::array();
  for (double a : m.alpha()) alpha.push_back(number(a));
  j["alpha"] = alpha;
  ordered_json cfg;
  cfg["emin"] = number(config.e_min);
  cfg["emax"] = number(config.e_max);
  cfg["step"] = number(config.step);
  cfg["phases"] = config.phases;
  cfg["trunc_sizes"] = config.trunc_sizes;
  cfg["trunc_phases"] = config.trunc_phases;
  cfg["nmax"] = config.detector.n_max;
  cfg["margin"] = number(config.detector.margin);
  cfg["truncation_tolerance"] = number(config.detector.truncation.tolerance);
  cfg["truncation_max"] = config.detector.truncation.max;
  cfg["le_steps"] = config.le.steps;
  cfg["le_phases"] = config.le.phases;
  cfg["seed"] = config.le.seed;
  j["config"] = cfg;
  const ScanSummary& s = result.summary;
  ordered_json counts;
  counts["DS"] = s.ds;
  counts["NO_DS"] = s.no_ds;
  counts["UNDET"] = s.undetermined;
  j["counts"] = counts;
  j["undetermined_fraction"] = number(s.undetermined_fraction);
  ordered_json intervals = ordered_json::array();
  for (const auto& iv : s.sigma_estimate) intervals.push_back({number(iv.lo), number(iv.hi)});
  j["sigma_estimate"] = intervals;
  j["hausdorff_no_ds_vs_truncation"] = number(s.hausdorff);
  j["truncation_coverage_radius"] = number(s.coverage_radius);
  j["truncation_eigenvalues"] = result.truncation.eigenvalues.size();
  j["truncation_edge_states_dropped"] = result.truncation.edge_states;
  ordered_json cto;
  cto["ds_rows"] = ct.checked;
  cto["positivity_violations"] = ct.violations;
  cto["kappa"] = number(ct.kappa);
  j["combes_thomas"] = cto;
  return j.dump(2) + "\n";
}

void persist(const std::filesystem::path& csv, const std::filesystem::path& summary,
             const JacobiModel& m, const ScanConfig& config, const ScanResult& result,
             const CombesThomasReport& ct) {
  {
    std::ofstream os(csv, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + csv.string() + " for writing");
    write_scan_csv(os, result.rows);
    if (!os) throw std::runtime_error("write failed: " + csv.string());
  }
  std::ofstream os(summary, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + summary.string() + " for writing");
  os << summary_json(m, config, result, ct);
  if (!os) throw std::runtime_error("write failed: " + summary.string());
}

}  // namespace qpj
