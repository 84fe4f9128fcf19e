#include "qpj/mat2.hpp"

#include <cmath>
#include <stdexcept>

namespace qpj {

namespace {
bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

Mat2 Mat2::checked(cplx a, cplx b, cplx c, cplx d) {
  Mat2 m{a, b, c, d};
  if (!m.is_finite()) throw std::invalid_argument("Mat2: non-finite entry");
  return m;
}

bool Mat2::is_finite() const { return finite(a) && finite(b) && finite(c) && finite(d); }

std::pair<double, double> singular_values(const Mat2& m) {
  // Scale to avoid overflow in the squared quantities.
  const double s = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  if (s == 0.0) return {0.0, 0.0};
  const Mat2 n = m / s;
  const double fro2 = std::norm(n.a) + std::norm(n.b) + std::norm(n.c) + std::norm(n.d);
  const double det = std::abs(n.det());
  const double disc = std::sqrt(std::max(0.0, (fro2 - 2.0 * det) * (fro2 + 2.0 * det)));
  const double s1 = std::sqrt(0.5 * (fro2 + disc));
  const double s2 = s1 > 0.0 ? det / s1 : 0.0;
  return {s * s1, s * s2};
}

double op_norm(const Mat2& m) { return singular_values(m).first; }

std::pair<cplx, cplx> least_singular_direction(const Mat2& m) {
  // Eigenvector of M^* M for its smaller eigenvalue.
  const double p = std::norm(m.a) + std::norm(m.c);
  const double q = std::norm(m.b) + std::norm(m.d);
  const cplx r = std::conj(m.a) * m.b + std::conj(m.c) * m.d;  // (M^*M)_{12}
  const double half_gap = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(r));
  const double lam = 0.5 * (p + q) - half_gap;
  // Rows of (M^*M - lam I): [p - lam, r], [conj(r), q - lam].
  cplx x, y;
  if (std::abs(p - lam) >= std::abs(q - lam)) {
    x = -r;
    y = p - lam;
  } else {
    x = q - lam;
    y = -std::conj(r);
  }
  const double nrm = std::hypot(std::abs(x), std::abs(y));
  if (nrm == 0.0) return {1.0, 0.0};
  return {x / nrm, y / nrm};
}

}  // namespace qpj
