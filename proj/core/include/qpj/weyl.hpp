#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpj/extended.hpp"
#include "qpj/model.hpp"
#include "qpj/orbit.hpp"

namespace qpj {

enum class HalfLine { minus, plus };

enum class MStatus {
  converged,      // Cauchy residual under tolerance
  pole,           // persistent pole: discrete eigenvalue of the half-line operator
  not_converged,  // truncation exhausted
  singular_solve  // single-size solve hit an exactly singular pivot; retry larger M
};

const char* to_string(MStatus s);

struct MValue {
  ExtComplex value;
  double residual = 0.0;  // chordal distance between sizes M and M/2
  long truncation = 0;    // M
  MStatus status = MStatus::converged;

  bool ok() const { return status == MStatus::converged || status == MStatus::pole; }
};

// Doubling schedule for the half-line truncations.
struct TruncationPolicy {
  long initial = 256;
  long max = 16384;
  double tolerance = 1e-8;
  double pole_growth = 10.0;  // |value| growth per doubling that signals a pole
};

// Half-line Weyl m-functions m_-(x,E) = <d_-1, (H_{x,-} - E)^-1 d_-1> (sites ..., -1) and
// m_+(x,E) = <d_1, (H_{x,+} - E)^-1 d_1> (sites 1, ...), computed from M x M
// Hermitian truncations by a pivoted tridiagonal solve. Holds scratch buffers,
// so one instance per thread.
class WeylSolver {
 public:
  explicit WeylSolver(const JacobiModel& m, TruncationPolicy policy = {});
  WeylSolver(JacobiModel&&, TruncationPolicy = {}) = delete;  // keeps a pointer to the model

  const JacobiModel& model() const { return *model_; }
  const TruncationPolicy& policy() const { return policy_; }

  // One truncation size; residual compares against size M/2.
  MValue at_size(HalfLine side, cplx energy, std::span<const double> x, long size);
  // Doubles M from policy.initial until the residual meets policy.tolerance.
  MValue adaptive(HalfLine side, cplx energy, std::span<const double> x);

 private:
  ExtComplex solve(HalfLine side, cplx energy, Orbit& orbit, long size, int* info);

  const JacobiModel* model_;
  TruncationPolicy policy_;
  OrbitTable table_;
  std::vector<cplx> sub_, diag_, super_, rhs_;
};

MValue m_minus_truncated(const JacobiModel& m, cplx energy, std::span<const double> x, long size);
MValue m_plus_truncated(const JacobiModel& m, cplx energy, std::span<const double> x, long size);

// Forward recursion m_-(Tx) = -1 / ((E - v(x)) + |c(T^-1 x)|^2 m_-(x)) along the K
// sites ending at x, started from 0, in homogeneous coordinates.
// Throws DomainError unless Im E > 0.
ExtComplex m_minus_riccati(const JacobiModel& m, cplx energy, std::span<const double> x, long steps);

// One step of the recursion above, projectively: m_-(x) -> m_-(Tx).
ExtComplex riccati_step(cplx energy, double v_x, cplx c_prev, const ExtComplex& m_x);

struct MField {
  cplx energy;
  HalfLine side = HalfLine::minus;
  std::vector<TorusPoint> points;
  std::vector<MValue> values;
};

MField m_field(const JacobiModel& m, cplx energy, const PhaseGrid& grid, HalfLine side,
               const TruncationPolicy& policy = {});

enum class SectionKind { s_minus, s_plus, s_tilde_minus, s_tilde_plus };

const char* to_string(SectionKind k);

struct SectionValue {
  ExtComplex value;        // chart phi_2 coordinate v2/v1
  MValue m;                // the underlying m-value
  bool suspect = false;    // 0 x inf or unconverged m: energy suspected in the spectrum
};

// s_-  = -c(T^-1 x) m_-(x),            s_+  = -1 / (conj(c(T^-1 x)) m_+(T^-1 x))
// s~_- = -m_-(x),                      s~_+ = -1 / (|c(T^-1 x)|^2 m_+(T^-1 x))
SectionValue section_at(WeylSolver& solver, SectionKind kind, cplx energy,
                        std::span<const double> x);

struct SectionField {
  cplx energy;
  SectionKind kind = SectionKind::s_minus;
  std::vector<TorusPoint> points;
  std::vector<SectionValue> values;

  bool any_suspect() const;
};

SectionField sections(const JacobiModel& m, cplx energy, const PhaseGrid& grid, SectionKind kind,
                      const TruncationPolicy& policy = {});

struct InvarianceReport {
  double sup_a = 0.0;        // sup chordal(A(x).s_-(x), s_-(Tx))
  double sup_a_tilde = 0.0;  // same for A_tilde and s~_-
  std::size_t worst_index = 0;
  std::size_t suspect_points = 0;
};

InvarianceReport invariance_residual(const JacobiModel& m, cplx energy, const PhaseGrid& grid,
                                     const TruncationPolicy& policy = {});

// G(0,0; x, E) = 1 / (conj(c(T^-1 x)) (s_-(x,E) - s_+(x,E))).
// Throws DomainError when s_+ and s_- coincide (E too close to the spectrum).
cplx green_diag(const JacobiModel& m, cplx energy, std::span<const double> x,
                const TruncationPolicy& policy = {});

// <d_0, (H_x - E)^-1 d_0> from the (2 size + 1)-site full-line truncation.
cplx green_diag_direct(const JacobiModel& m, cplx energy, std::span<const double> x, long size);

// min over the grid of |s_+ - s_-| (chordal if either is inf).
double transversality_gap(const JacobiModel& m, cplx energy, const PhaseGrid& grid,
                          const TruncationPolicy& policy = {});

// CSV: phase coords..., re, im, is_infinity, truncation_M, residual
void write_csv(std::ostream& os, const MField& f);
void write_csv(std::ostream& os, const SectionField& f);

}  // namespace qpj
