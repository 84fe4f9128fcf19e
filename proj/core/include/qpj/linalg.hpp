#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qpj::linalg {

using cplx = std::complex<double>;

// Solves a general complex tridiagonal system with partial pivoting (LAPACK zgtsv).
// All spans are overwritten; the solution is left in rhs. sub and super have
// size n-1. Returns LAPACK's info: 0 on success, k > 0 if pivot k is exactly zero.
int solve_tridiagonal(std::span<cplx> sub, std::span<cplx> diag, std::span<cplx> super,
                      std::span<cplx> rhs);

struct TridiagonalEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major n x n, empty unless requested
};

// Eigen-decomposition of a real symmetric tridiagonal matrix (LAPACK dstevr).
// Throws std::runtime_error on solver failure.
TridiagonalEigen symmetric_tridiagonal_eigen(std::span<const double> diag,
                                             std::span<const double> off, bool vectors);

// Roots of sum_k coeffs[k] z^k (ascending powers, leading coefficient nonzero).
// Companion-matrix eigenvalues (LAPACK zgeev) polished by Newton steps.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

}  // namespace qpj::linalg
