#include "qpj/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qpj::linalg {

int solve_tridiagonal(std::span<cplx> sub, std::span<cplx> diag, std::span<cplx> super,
                      std::span<cplx> rhs) {
  const auto n = static_cast<lapack_int>(diag.size());
  if (n == 0) return 0;
  return LAPACKE_zgtsv(LAPACK_COL_MAJOR, n, 1, sub.data(), diag.data(), super.data(),
                       rhs.data(), n);
}

TridiagonalEigen symmetric_tridiagonal_eigen(std::span<const double> diag,
                                             std::span<const double> off, bool vectors) {
  const auto n = static_cast<lapack_int>(diag.size());
  TridiagonalEigen out;
  if (n == 0) return out;
  std::vector<double> d(diag.begin(), diag.end());
  // dstevr reads n entries of e (last one is workspace).
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) e[i] = off[i];
  out.values.resize(static_cast<std::size_t>(n));
  if (vectors) out.vectors.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  double dummy = 0.0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0,
      0.0, &found, out.values.data(), vectors ? out.vectors.data() : &dummy,
      vectors ? n : 1, support.data());
  if (info != 0 || found != n) {
    throw std::runtime_error("dstevr failed with info " + std::to_string(info));
  }
  return out;
}

namespace {

cplx horner(std::span<const cplx> coeffs, cplx z, cplx* derivative) {
  cplx p = 0.0;
  cplx dp = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + coeffs[k];
  }
  *derivative = dp;
  return p;
}

}  // namespace

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
  if (coeffs.size() < 2) return {};
  const std::size_t deg = coeffs.size() - 1;
  const cplx lead = coeffs[deg];
  if (lead == 0.0) throw std::invalid_argument("polynomial_roots: zero leading coefficient");
  if (deg == 1) return {-coeffs[0] / lead};

  const auto n = static_cast<lapack_int>(deg);
  std::vector<cplx> companion(deg * deg, 0.0);  // column-major
  for (std::size_t i = 1; i < deg; ++i) companion[(i - 1) * deg + i] = 1.0;
  for (std::size_t i = 0; i < deg; ++i) companion[(deg - 1) * deg + i] = -coeffs[i] / lead;
  std::vector<cplx> w(deg);
  cplx dummy;
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, companion.data(), n,
                                        w.data(), &dummy, 1, &dummy, 1);
  if (info != 0) throw std::runtime_error("zgeev failed with info " + std::to_string(info));

  for (auto& r : w) {
    for (int it = 0; it < 4; ++it) {
      cplx dp;
      const cplx p = horner(coeffs, r, &dp);
      if (dp == 0.0) break;
      const cplx step = p / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
  }
  return w;
}

}  // namespace qpj::linalg
