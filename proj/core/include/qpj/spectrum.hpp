#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpj/cocycle.hpp"
#include "qpj/domination.hpp"
#include "qpj/model.hpp"

namespace qpj {

struct TruncationSpectrum {
  std::vector<long> sizes;
  std::vector<TorusPoint> phases;
  std::vector<double> eigenvalues;  // merged over sizes and phases, ascending
  double coverage_radius = 0.0;     // Hausdorff drift between the two largest sizes
  std::size_t edge_states = 0;      // eigenvalues dropped as boundary-localized
  std::vector<std::string> diagnostics;
};

struct TruncationOptions {
  // An eigenvector with more than edge_weight of its mass on the outer edge_fraction
  // of sites at either end is a boundary state of the truncation and is dropped.
  double edge_fraction = 0.0625;
  double edge_weight = 0.5;
  bool filter_edges = true;
  unsigned workers = 1;
};

// `count` phases spread evenly over the torus diagonal: x_k = (k + 1/2) / count in every coordinate.
std::vector<TorusPoint> default_truncation_phases(int dim, long count);

// Eigenvalues of the n x n sections of H_x on sites 0..n-1.
TruncationSpectrum truncation_spectrum(const JacobiModel& m, const std::vector<long>& sizes,
                                       const std::vector<TorusPoint>& phases,
                                       const TruncationOptions& options = {});

// Hausdorff distance of two finite subsets of R (inf if exactly one is empty).
double hausdorff(const std::vector<double>& a, const std::vector<double>& b);

// Distance from e to the nearest element of a sorted list (inf if empty).
double distance_to(const std::vector<double>& sorted, double e);

struct ScanConfig {
  double e_min = -3.0;
  double e_max = 3.0;
  double step = 0.01;
  long phases = 512;  // uniform grid points per torus dimension for certification
  DetectorConfig detector;
  LyapunovScheme le;
  std::vector<long> trunc_sizes{512, 1024};
  long trunc_phases = 8;
  unsigned workers = 1;
};

struct ScanRow {
  double energy = 0.0;
  DominationCertificate certificate;
  double le_a = 0.0;
  double le_b = 0.0;
  double dist_trunc = 0.0;  // distance to the nearest truncation eigenvalue
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ScanSummary {
  std::size_t ds = 0, no_ds = 0, undetermined = 0;
  double undetermined_fraction = 0.0;
  std::vector<Interval> sigma_estimate;  // maximal runs of consecutive NO_DS energies
  double hausdorff = 0.0;                // NO_DS energies vs truncation eigenvalues
  double coverage_radius = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;  // ascending energy
  TruncationSpectrum truncation;
  ScanSummary summary;
};

// Energies e_min + k step, k = 0, 1, ... while <= e_max (with 1e-9 step slack).
std::vector<double> energy_grid(double e_min, double e_max, double step);

// Classifies every grid energy. Energies are distributed over `workers` threads; each row
// depends only on its energy, so the result does not depend on the worker count.
ScanResult scan(const JacobiModel& m, const ScanConfig& config);

ScanSummary summarize(const std::vector<ScanRow>& rows, const TruncationSpectrum& t);

struct CombesThomasReport {
  std::size_t checked = 0;     // DS rows
  std::size_t violations = 0;  // DS rows with le_b <= 0
  double kappa = 0.0;          // min le_b / dist over DS rows with dist > 0
  bool kappa_ok = true;        // kappa >= kappa_floor
};

CombesThomasReport combes_thomas_check(const std::vector<ScanRow>& rows, double kappa_floor = 0.0);

struct DecayRateReport {
  double slope = 0.0;          // least-squares slope of log sup vs n
  double le_b = 0.0;
  double expected = 0.0;       // -2 L(B)
  double relative_error = 0.0;
  std::vector<ProfilePoint> profile;
};

DecayRateReport decay_rate_check(const JacobiModel& m, double energy, const std::vector<int>& n_list,
                                 long phases = 512, const LyapunovScheme& le = {},
                                 const TruncationPolicy& policy = {});

}  // namespace qpj
