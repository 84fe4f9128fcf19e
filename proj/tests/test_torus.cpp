#include <gtest/gtest.h>

#include <cmath>

#include "qpj/torus.hpp"
#include "support.hpp"

namespace qpj {
namespace {

TEST(Torus, FracIsInUnitInterval) {
  EXPECT_EQ(frac(1.25), 0.25);
  EXPECT_EQ(frac(-0.25), 0.75);
  EXPECT_EQ(frac(3.0), 0.0);
  test::Gen g;
  for (int i = 0; i < 1000; ++i) {
    const double f = frac(g.uniform(-1e6, 1e6));
    EXPECT_GE(f, 0.0);
    EXPECT_LT(f, 1.0);
  }
}

TEST(Torus, UnitPhaseExactAtQuarterTurns) {
  EXPECT_EQ(unit_phase(0.0), cplx(1.0, 0.0));
  EXPECT_EQ(unit_phase(0.25), cplx(0.0, 1.0));
  EXPECT_EQ(unit_phase(0.5), cplx(-1.0, 0.0));
  EXPECT_EQ(unit_phase(0.75), cplx(0.0, -1.0));
  EXPECT_EQ(1.0 + unit_phase(0.5), cplx(0.0, 0.0));
}

TEST(Torus, UnitPhaseMatchesExp) {
  test::Gen g;
  for (int i = 0; i < 1000; ++i) {
    const double t = g.uniform(-5, 5);
    EXPECT_LT(std::abs(unit_phase(t) - std::exp(cplx(0.0, 2.0 * M_PI * t))), 1e-12);
  }
}

TEST(Torus, ShiftComposes) {
  test::Gen g;
  const double a = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double x = g.uniform(0, 1);
    const long n = g.integer(-100000, 100000), k = g.integer(-1000, 1000);
    EXPECT_LT(circle_distance(shift_coordinate(shift_coordinate(x, a, n), a, k), shift_coordinate(x, a, n + k)),
              1e-10);
  }
  EXPECT_EQ(shift_coordinate(0.3, a, 0), 0.3);
}

TEST(Torus, Distances) {
  EXPECT_NEAR(circle_distance(0.05, 0.95), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(circle_distance(0.2, 0.7), 0.5);
  const TorusPoint a{0.1, 0.9}, b{0.2, 0.05};
  EXPECT_NEAR(torus_distance(a, b), 0.15, 1e-15);
}

}  // namespace
}  // namespace qpj
