#include <gtest/gtest.h>

#include <cmath>

#include "qpj/domination.hpp"
#include "qpj/projective.hpp"
#include "support.hpp"

namespace qpj {
namespace {

TEST(Projective, IdentityFixesEverything) {
  test::Gen g;
  for (int i = 0; i < 100; ++i) {
    const ProjPoint z = ProjPoint::from_chart(g.complex(20.0));
    EXPECT_LT(chordal_distance(proj_action(Mat2::identity(), z), z), 1e-15);
  }
}

TEST(Projective, MobiusFixedPoint) {
  const Mat2 d{3.0, -1.0, 1.0, 0.0};
  const double s = -test::kFreeM;
  // The action in the phi_2 chart of this matrix sends z to 1 / (3 - z).
  const ExtComplex image = mobius(d, ExtComplex::finite(s));
  EXPECT_NEAR(std::abs(image.value - s), 0.0, 1e-15);
  EXPECT_NEAR(s, 0.3819660, 1e-7);
}

TEST(Projective, RankOneImage) {
  const Mat2 d{2.0, -1.0, 0.0, 0.0};
  const ProjPoint img = proj_action(d, ProjPoint::infinity());
  EXPECT_NEAR(std::abs(img.chart().value), 0.0, 1e-15);
  EXPECT_FALSE(img.chart().infinite);
  const ProjPoint ker = kernel_direction(d);  // span (1, 2)
  EXPECT_NEAR(std::abs(ker.chart().value - 2.0), 0.0, 1e-12);
  EXPECT_THROW(proj_action(d, ker), KernelHit);
}

TEST(Projective, ChartAndHomogeneousAgree) {
  test::Gen g;
  for (int i = 0; i < 10000; ++i) {
    const Mat2 d{g.complex(2), g.complex(2), g.complex(2), g.complex(2)};
    const double r = g.uniform(0.0, 1.0) < 0.1 ? 1e6 : 5.0;
    const ExtComplex z = ExtComplex::finite(g.complex(r));
    const ExtComplex via_chart = mobius(d, z);
    const ProjPoint via_pair = proj_action(d, ProjPoint::from_extended(z));
    EXPECT_LE(chordal_distance(ProjPoint::from_extended(via_chart), via_pair), 1e-12);
  }
}

TEST(Projective, ChordalDistanceConsistent) {
  test::Gen g;
  for (int i = 0; i < 1000; ++i) {
    const ExtComplex a = ExtComplex::finite(g.complex(30)), b = ExtComplex::finite(g.complex(30));
    EXPECT_NEAR(chordal_distance(a, b), chordal_distance(ProjPoint::from_extended(a), ProjPoint::from_extended(b)),
                1e-13);
  }
  EXPECT_NEAR(chordal_distance(ExtComplex::finite(0.0), ExtComplex::infinity()), 2.0, 1e-15);
}

TEST(Projective, DerivativeMatchesFiniteDifference) {
  test::Gen g;
  int checked = 0;
  while (checked < 100) {
    const Mat2 d{g.complex(2), g.complex(2), g.complex(2), g.complex(2)};
    const cplx z = g.complex(1.5);
    const cplx den = d.a + d.b * z;
    if (std::abs(den) < 0.2) continue;  // stay away from poles
    const double h = 1e-6;
    const cplx fd = (mobius(d, ExtComplex::finite(z + h)).value - mobius(d, ExtComplex::finite(z - h)).value) / (2 * h);
    const cplx exact = mobius_derivative(d, z);
    EXPECT_LE(std::abs(fd - exact), 1e-6 * std::abs(exact));
    ++checked;
  }
  EXPECT_THROW(mobius_derivative(Mat2{1.0, 1.0, 0.0, 1.0}, -1.0), PoleError);
}

TEST(Projective, LogChartDerivativeSwitchesCharts) {
  const Mat2 d{3.0, -1.0, 1.0, 0.0};
  const cplx z = 0.7;
  EXPECT_NEAR(log_chart_derivative(d, ProjPoint::from_chart(z)), std::log(std::abs(mobius_derivative(d, z))), 1e-13);
  // z -> 2z reads as w -> w/2 in the phi_1 chart near infinity.
  const Mat2 scale{1.0, 0.0, 0.0, 2.0};
  EXPECT_NEAR(log_chart_derivative(scale, ProjPoint::from_chart(0.1)), std::log(2.0), 1e-14);
  EXPECT_NEAR(log_chart_derivative(scale, ProjPoint::from_chart(100.0)), std::log(0.5), 1e-14);
}

}  // namespace
}  // namespace qpj
