#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qpj/mat2.hpp"
#include "qpj/model.hpp"

namespace qpj {

// A:       [[E - v(x), -conj(c(T^-1 x))], [c(x), 0]]
// A_tilde: [[E - v(x), -|c(T^-1 x)|^2], [1, 0]]
// B = A / c(x),  B_tilde = A_tilde / c(T^-1 x)
enum class CocycleKind { A, A_tilde, B, B_tilde };

const char* to_string(CocycleKind k);
inline bool is_transfer_kind(CocycleKind k) {
  return k == CocycleKind::B || k == CocycleKind::B_tilde;
}

// B-kinds reject phases within this torus distance of a zero of c.
inline constexpr double kSingularPhaseRadius = 1e-9;

// Throws SingularPhaseError for B-kinds when the denominator c-value is zero.
Mat2 cocycle_matrix(const JacobiModel& m, CocycleKind kind, cplx energy,
                    std::span<const double> x);

struct DetIdentityReport {
  cplx det_a_residual;        // det A - c(x) conj(c(T^-1 x))
  cplx det_a_tilde_residual;  // det A_tilde - |c(T^-1 x)|^2
  std::optional<double> det_b_tilde_residual;  // |det B_tilde| - 1, where defined
  bool singular = false;                       // c(x) = 0 or c(T^-1 x) = 0
  cplx det_a;
};

DetIdentityReport det_identity_check(const JacobiModel& m, cplx energy,
                                     std::span<const double> x);

// D_n(x) = exp(log_norm) * normalized with |normalized| = 1 in operator norm.
// A product that is exactly zero has normalized = 0 and log_norm = -inf.
struct Product {
  Mat2 normalized;
  double log_norm = 0.0;
  double log_abs_det = 0.0;  // sum of log|det D(T^j x)|
};

// D(T^{n-1} x) ... D(x), renormalized after every factor.
// Throws SingularPhaseError for B-kinds whose orbit segment meets the singular set.
Product iterate(const JacobiModel& m, CocycleKind kind, cplx energy, std::span<const double> x,
                long n);

struct LyapunovScheme {
  enum class Type { orbit, phase_avg };
  Type type = Type::orbit;
  long steps = 100'000;
  long phases = 8;
  std::uint64_t seed = 1;
  double tolerance = 1e-3;  // allowed |full - half| before flagging non-convergence

  static LyapunovScheme orbit(long steps, long phases = 8, std::uint64_t seed = 1) {
    return {Type::orbit, steps, phases, seed, 1e-3};
  }
  static LyapunovScheme phase_avg(long phases, long steps) {
    return {Type::phase_avg, steps, phases, 1, 1e-3};
  }
};

struct LEEstimate {
  double value = 0.0;  // nats per step
  long n_steps = 0;
  double half_value = 0.0;  // same estimator at n/2 steps
  long phase_count = 0;
  bool converged = true;
};

LEEstimate lyapunov(const JacobiModel& m, CocycleKind kind, cplx energy,
                    const LyapunovScheme& scheme = {});

// Several kinds along the same starting phases in one pass.
std::vector<LEEstimate> lyapunov_multi(const JacobiModel& m, std::span<const CocycleKind> kinds,
                                       cplx energy, const LyapunovScheme& scheme = {});

// Starting phases used by the LE estimators; orbits avoid the singular set of c.
std::vector<TorusPoint> lyapunov_phases(const JacobiModel& m, const LyapunovScheme& scheme);

// |M(Tx)^-1 A_tilde(x) M(x) - A(x)| with M(x) = diag(1, 1/c(T^-1 x)).
double conjugacy_residual(const JacobiModel& m, cplx energy, std::span<const double> x);

struct LERelationReport {
  LEEstimate a;
  LEEstimate a_tilde;
  LEEstimate b;
  double mean_log_c = 0.0;
  double residual_a_tilde = 0.0;  // L(A) - L(A_tilde)
  double residual_b = 0.0;        // L(B) - (L(A) - int log|c|)
};

LERelationReport le_relation_report(const JacobiModel& m, cplx energy,
                                    const LyapunovScheme& scheme = {});

}  // namespace qpj
