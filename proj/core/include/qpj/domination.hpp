#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qpj/cocycle.hpp"
#include "qpj/model.hpp"
#include "qpj/projective.hpp"
#include "qpj/weyl.hpp"

namespace qpj {

enum class DSStatus { DS, NO_DS, UNDETERMINED };

// "DS", "NO_DS", "UNDET".
const char* to_string(DSStatus s);
// Inverse of to_string; also accepts "UNDETERMINED". Throws std::invalid_argument.
DSStatus ds_status_from_string(const std::string& s);

struct ProfilePoint {
  int n = 0;
  double sup = 0.0;  // sup over the grid of |d(A_n . z)/dz| at z = s_-(x)
};

struct DominationCertificate {
  DSStatus status = DSStatus::UNDETERMINED;
  int n = 0;                        // certified N (DS only)
  double contraction_sup = 0.0;     // at the certified N, else the best N tried
  double transversality_min = 0.0;  // min over the grid of |s_+ - s_-|
  double kernel_clearance = 0.0;    // min chordal(s_-, ker A); inf if no grid phase has det A = 0
  double lambda_gap = 0.0;          // min over the grid of log|prod l1| - log|prod l2| over N steps
  double sv_gap = 0.0;              // sv_gap_crosscheck rate at N (DS) or over the long window
  std::vector<ProfilePoint> profile;
  std::string diagnostics;
};

struct DetectorConfig {
  double margin = 0.05;             // DS needs contraction_sup <= 1 - margin
  int n_max = 64;
  TruncationPolicy truncation;
  double transversality_floor = 1e-10;
  double kernel_det_tol = 1e-12;    // |det A(x)| <= tol (1 + |c|_sup^2) counts as a kernel phase
  double sv_gap_threshold = 1e-3;   // DS needs the sv-gap rate at N above this
  long no_ds_window = 4096;         // long window for the no-gap-growth test
  std::size_t no_ds_phases = 16;    // grid subsample used by that test
  double no_ds_rate = 0.01;         // rate below this counts as no gap growth
};

// Derivative of the chart action of A^E(x) (kind A or A_tilde) at z in the phi_2 chart.
// Throws PoleError at a pole of the chart map.
cplx proj_derivative(const JacobiModel& m, cplx energy, std::span<const double> x, cplx z,
                     CocycleKind kind = CocycleKind::A);

// log |d(D . u)| for the projective action of D on the direction u, measured in the phi_2
// chart at points with |z| <= kChartSwitch and in the phi_1 chart beyond.
double log_chart_derivative(const Mat2& d, const ProjPoint& u);

// Grid sup of |d(A_n . s_-)| for n = 1..n_max, from sections at the grid points extended
// along the orbit by the cocycle. Empty when a section is suspect.
std::vector<ProfilePoint> contraction_profile(const JacobiModel& m, cplx energy,
                                              const PhaseGrid& grid, int n_max,
                                              CocycleKind kind = CocycleKind::A,
                                              const TruncationPolicy& policy = {});

DominationCertificate certify(const JacobiModel& m, cplx energy, const PhaseGrid& grid,
                              CocycleKind kind = CocycleKind::A, const DetectorConfig& config = {});

struct SvGap {
  double rate = 0.0;                    // min over grid of log(s1/s2)/N where s2 > 0
  std::size_t rank_deficient = 0;       // grid points with s2 = 0
};

SvGap sv_gap_crosscheck(const JacobiModel& m, cplx energy, const PhaseGrid& grid, int n,
                        CocycleKind kind = CocycleKind::A);

}  // namespace qpj
