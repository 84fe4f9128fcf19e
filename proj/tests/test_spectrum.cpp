#include <gtest/gtest.h>

#include <cmath>

#include "qpj/linalg.hpp"
#include "qpj/spectrum.hpp"
#include "support.hpp"

namespace qpj {
namespace {

double hausdorff_to_interval(const std::vector<double>& pts, double lo, double hi) {
  std::vector<double> line;
  for (double e = lo; e <= hi + 1e-12; e += 1e-3) line.push_back(e);
  return hausdorff(pts, line);
}

TEST(Spectrum, ThreeSiteFreeSection) {
  const std::vector<double> diag(3, 0.0), off(2, 1.0);
  const auto eig = linalg::symmetric_tridiagonal_eigen(diag, off, false);
  ASSERT_EQ(eig.values.size(), 3u);
  EXPECT_NEAR(eig.values[0], -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(eig.values[1], 0.0, 1e-14);
  EXPECT_NEAR(eig.values[2], std::sqrt(2.0), 1e-14);
}

TEST(Spectrum, FreeTruncationFillsInterval) {
  const auto t = truncation_spectrum(presets::free_model(), {256, 512}, default_truncation_phases(1, 8));
  EXPECT_LE(hausdorff_to_interval(t.eigenvalues, -2.0, 2.0), 0.01);
  EXPECT_TRUE(std::is_sorted(t.eigenvalues.begin(), t.eigenvalues.end()));
  const auto z = truncation_spectrum(presets::almost_mathieu(0.0), {256, 512}, default_truncation_phases(1, 8));
  EXPECT_LE(hausdorff_to_interval(z.eigenvalues, -2.0, 2.0), 0.01);
}

TEST(Spectrum, EigenvaluesWithinOperatorBound) {
  for (const auto& m : {presets::almost_mathieu(0.5), presets::singular_harper(0.5), presets::almost_mathieu(2.0)}) {
    const auto t = truncation_spectrum(m, {128, 256}, default_truncation_phases(1, 4));
    ASSERT_FALSE(t.eigenvalues.empty());
    EXPECT_LE(std::max(-t.eigenvalues.front(), t.eigenvalues.back()), m.operator_bound() + 1e-9);
  }
}

TEST(Spectrum, EdgeFilterDropsBoundaryStates) {
  // The cut at both ends creates states in the gaps; the filter drops them.
  const auto m = presets::almost_mathieu(0.5);
  TruncationOptions raw;
  raw.filter_edges = false;
  const auto all = truncation_spectrum(m, {256}, default_truncation_phases(1, 8), raw);
  const auto filtered = truncation_spectrum(m, {256}, default_truncation_phases(1, 8));
  EXPECT_EQ(all.eigenvalues.size(), filtered.eigenvalues.size() + filtered.edge_states);
  EXPECT_GT(filtered.edge_states, 0u);
}

TEST(Spectrum, RejectsBadArguments) {
  EXPECT_THROW(truncation_spectrum(presets::free_model(), {4}, default_truncation_phases(1, 1)), std::invalid_argument);
  EXPECT_THROW(truncation_spectrum(presets::free_model(), {64}, {}), std::invalid_argument);
  EXPECT_THROW(energy_grid(1.0, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(energy_grid(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(Spectrum, HausdorffAndDistance) {
  EXPECT_DOUBLE_EQ(hausdorff({0.0, 1.0}, {0.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(hausdorff({0.0}, {0.0, 3.0}), 3.0);
  EXPECT_TRUE(std::isinf(hausdorff({}, {1.0})));
  EXPECT_DOUBLE_EQ(distance_to({-1.0, 2.0}, 0.5), 1.5);
  EXPECT_EQ(energy_grid(-3.0, 3.0, 0.01).size(), 601u);
  EXPECT_EQ(energy_grid(-3.0, 3.0, 0.01).back(), 3.0);
}

TEST(Spectrum, FreeScanSmallWindow) {
  ScanConfig cfg;
  cfg.e_min = 1.5;
  cfg.e_max = 2.5;
  cfg.step = 0.05;
  cfg.phases = 64;
  cfg.trunc_sizes = {128, 256};
  cfg.le = LyapunovScheme::orbit(20000, 2, 3);
  const auto r = scan(presets::free_model(), cfg);
  ASSERT_EQ(r.rows.size(), 21u);
  for (const auto& row : r.rows) {
    if (std::abs(row.energy) <= 1.95) EXPECT_EQ(row.certificate.status, DSStatus::NO_DS) << row.energy;
    if (std::abs(row.energy) >= 2.05) EXPECT_EQ(row.certificate.status, DSStatus::DS) << row.energy;
  }
  ASSERT_FALSE(r.summary.sigma_estimate.empty());
  EXPECT_DOUBLE_EQ(r.summary.sigma_estimate.front().lo, 1.5);
  const auto ct = combes_thomas_check(r.rows);
  EXPECT_EQ(ct.violations, 0u);
  EXPECT_GT(ct.kappa, 0.0);

  cfg.workers = 3;
  const auto again = scan(presets::free_model(), cfg);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(again.rows[i].le_b, r.rows[i].le_b);
    EXPECT_EQ(again.rows[i].certificate.status, r.rows[i].certificate.status);
  }
}

TEST(Spectrum, CombesThomasExcludesNonDS) {
  std::vector<ScanRow> rows(3);
  rows[0].certificate.status = DSStatus::DS;
  rows[0].le_b = 0.9624;
  rows[0].dist_trunc = 1.0;
  rows[1].certificate.status = DSStatus::NO_DS;
  rows[1].le_b = -1.0;
  rows[2].certificate.status = DSStatus::DS;
  rows[2].le_b = 0.0;
  rows[2].dist_trunc = 0.5;
  const auto ct = combes_thomas_check(rows);
  EXPECT_EQ(ct.checked, 2u);
  EXPECT_EQ(ct.violations, 1u);
}

TEST(Spectrum, DecayRateFree) {
  std::vector<int> ns;
  for (int n = 4; n <= 32; ++n) ns.push_back(n);
  const auto r = decay_rate_check(presets::free_model(), 3.0, ns, 32);
  EXPECT_NEAR(r.slope, -2.0 * test::kFreeL, 1e-6);
  EXPECT_LE(r.relative_error, 0.05);
  const auto edge = decay_rate_check(presets::free_model(), 2.2, ns, 32);
  EXPECT_LE(edge.relative_error, 0.10);
}

}  // namespace
}  // namespace qpj
