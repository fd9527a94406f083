#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "qcrb/core/tensor_grid.hpp"
#include "qcrb/metric/bump.hpp"
#include "qcrb/metric/families.hpp"
#include "qcrb/metric/metric_family.hpp"

using namespace qcrb;

namespace {

CoordinateBox make_box(std::array<double, 4> lo, std::array<double, 4> hi) {
  CoordinateBox b;
  b.lo = lo;
  b.hi = hi;
  return b;
}

}  // namespace

TEST(Families, GwPlaneWaveIsFlatAtZeroAmplitude) {
  const MetricFamily gw = families::gw_plane_wave(0.0);
  const Vec4 x(0.3, -1.2, 4.0, 7.5);
  EXPECT_EQ(gw.fiducial(x), minkowski());
  const Mat4 d = gw.parameter_derivative(x);
  Mat4 expected = Mat4::Zero();
  expected(1, 1) = 1.0;
  expected(2, 2) = -1.0;
  EXPECT_EQ(d, expected);
}

TEST(Families, FlrwPrefactorAtHalfCycle) {
  const double a_max = 2.5;
  const MetricFamily flrw = families::flrw_closed_dust(a_max);
  const Vec4 x(kPi, 0.7, 1.1, 0.2);
  const Mat4 g = flrw.fiducial(x);
  const double s_chi = std::sin(0.7);
  const double s_th = std::sin(1.1);
  EXPECT_NEAR(g(0, 0), -a_max * a_max, 1e-13);
  EXPECT_NEAR(g(1, 1), a_max * a_max, 1e-13);
  EXPECT_NEAR(g(2, 2), a_max * a_max * s_chi * s_chi, 1e-13);
  EXPECT_NEAR(g(3, 3), a_max * a_max * s_chi * s_chi * s_th * s_th, 1e-13);
  const Mat4 d = flrw.parameter_derivative(x);
  EXPECT_LE((d - 2.0 / a_max * g).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Families, SchwarzschildLapseAtFourMasses) {
  const double m = 1.7;
  const MetricFamily s = families::schwarzschild(m);
  EXPECT_DOUBLE_EQ(s.fiducial(Vec4(0.0, 4.0 * m, 1.0, 0.0))(0, 0), -0.5);
}

TEST(Families, SchwarzschildExcludesHorizonNeighbourhood) {
  const MetricFamily s = families::schwarzschild(1.0);
  EXPECT_THROW(s.fiducial(Vec4(0.0, 2.0, 1.0, 0.0)), DomainError);
  EXPECT_THROW(s.fiducial(Vec4(0.0, 2.5, 1.0, 0.0)), DomainError);
  EXPECT_NO_THROW(s.fiducial(Vec4(0.0, 2.6, 1.0, 0.0)));
}

TEST(Families, SchwarzschildAndIsotropicAgreeAtZeroMass) {
  const MetricFamily s = families::schwarzschild(0.0);
  const MetricFamily i = families::isotropic(0.0);
  for (double r : {0.5, 1.0, 3.0}) {
    const Vec4 x(0.2, r, 0.9, 2.0);
    const Mat4 flat = Vec4(-1.0, 1.0, r * r, r * r * std::sin(0.9) * std::sin(0.9)).asDiagonal();
    EXPECT_EQ(s.fiducial(x), flat);
    EXPECT_EQ(i.fiducial(x), flat);
  }
}

TEST(Families, DeSitterDerivativeScalesInversely) {
  const double lambda = 0.37;
  const MetricFamily ds = families::de_sitter(lambda);
  const Vec4 x(0.4, 1.0, 2.0, 0.5);
  const Mat4 g = ds.fiducial(x);
  const Mat4 d = ds.parameter_derivative(x);
  for (int a = 0; a < 4; ++a) {
    EXPECT_NEAR(d(a, a), -g(a, a) / lambda, 1e-10 * std::abs(g(a, a) / lambda));
  }
}

TEST(Families, ComponentPerturbationDerivative) {
  const Vec4 x(1.0, 2.0, 3.0, 4.0);
  const Mat4 d11 = families::component_perturbation(1, 1).parameter_derivative(x);
  EXPECT_EQ(d11(1, 1), 1.0);
  EXPECT_EQ(d11.cwiseAbs().sum(), 1.0);
  const Mat4 d02 = families::component_perturbation(0, 2).parameter_derivative(x);
  EXPECT_EQ(d02(0, 2), 1.0);
  EXPECT_EQ(d02(2, 0), 1.0);
  EXPECT_EQ(d02.cwiseAbs().sum(), 2.0);
  EXPECT_THROW(families::component_perturbation(4, 0), ConfigError);
}

TEST(Families, EveryCatalogFamilyIsSymmetricLorentzianWithMatchingDerivative) {
  for (const auto& entry : families::builtin_catalog()) {
    SCOPED_TRACE(entry.family.name());
    const Vec4 centre = 0.5 * (Vec4(entry.sample_box.lo.data()) + Vec4(entry.sample_box.hi.data()));
    const Mat4 g = entry.family.fiducial(centre);
    EXPECT_LE(max_asymmetry(g), 1e-14 * g.cwiseAbs().maxCoeff());
    EXPECT_TRUE(is_lorentzian(g));
    const DerivativeCheck chk = check_parameter_derivative(entry.family, entry.sample_box, 100, 7);
    EXPECT_TRUE(chk.passed) << "worst ratio " << chk.worst_ratio;
  }
}

TEST(Families, FiniteDifferenceStepFollowsParameterScale) {
  EXPECT_DOUBLE_EQ(families::schwarzschild(3.0).finite_difference_step(), 3e-6);
  EXPECT_DOUBLE_EQ(families::gw_plane_wave(0.0).finite_difference_step(), 1e-8);
}

TEST(Bump, PlateauSupportAndMidpoint) {
  const CoordinateBox plateau = make_box({-1, -1, -1, -1}, {1, 1, 1, 1});
  const CoordinateBox support = make_box({-2, -2, -2, -2}, {2, 2, 2, 2});
  const BumpProfile smooth(plateau, support, ProfileKind::Smoothstep, 3);
  EXPECT_EQ(smooth.value(Vec4::Zero()), 1.0);
  EXPECT_EQ(smooth.value(Vec4(2.5, 0, 0, 0)), 0.0);
  EXPECT_DOUBLE_EQ(smooth.value(Vec4(1.5, 0, 0, 0)), 0.5);
  EXPECT_DOUBLE_EQ(smooth.value(Vec4(0, -1.5, 0, 0)), 0.5);

  const BumpProfile moll(plateau, support, ProfileKind::Mollifier);
  EXPECT_NEAR(moll.value(Vec4(1.5, 0, 0, 0)), 0.5, 1e-14);
  EXPECT_EQ(moll.value(Vec4(0, 0, 3.0, 0)), 0.0);
}

TEST(Bump, MonotoneAndBoundedAcrossShell) {
  const CoordinateBox plateau = make_box({0, 0, 0, 0}, {1, 1, 1, 1});
  const CoordinateBox support = make_box({-1, -1, -1, -1}, {2, 2, 2, 2});
  for (ProfileKind kind : {ProfileKind::Smoothstep, ProfileKind::Mollifier}) {
    const BumpProfile b(plateau, support, kind, 4);
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double v = b.value(Vec4(-1.0 + i * 0.005, 0.5, 0.5, 0.5));
      EXPECT_GE(v, prev - 1e-15);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      prev = v;
    }
    EXPECT_EQ(prev, 1.0);
  }
}

TEST(Bump, SmoothstepDerivativesVanishAtEnds) {
  // S_k is C^k: its first k derivatives vanish at both ends. Probe with one-sided
  // differences whose size must shrink like h^(k+1).
  for (int k = 1; k <= 4; ++k) {
    const double h1 = 1e-4, h2 = 5e-5;
    const double r = BumpProfile::smoothstep(k, h1) / BumpProfile::smoothstep(k, h2);
    EXPECT_NEAR(std::log2(r), k + 1, 1e-2) << "order " << k;
    EXPECT_NEAR(BumpProfile::smoothstep(k, 1.0 - h1), 1.0 - BumpProfile::smoothstep(k, h1), 1e-13);
  }
}

TEST(Bump, PlateauMustSitStrictlyInsideSupport) {
  const CoordinateBox plateau = make_box({0, 0, 0, 0}, {1, 1, 1, 1});
  const CoordinateBox support = make_box({0, -1, -1, -1}, {2, 2, 2, 2});
  EXPECT_THROW(BumpProfile(plateau, support, ProfileKind::Smoothstep), ConfigError);
}

TEST(Localize, MatchesBaseOnPlateauAndFiducialOutside) {
  const MetricFamily base = families::gw_plane_wave(0.0);
  const BumpProfile bump(make_box({-1, -1, -1, -1}, {1, 1, 1, 1}),
                         make_box({-2, -2, -2, -2}, {2, 2, 2, 2}), ProfileKind::Smoothstep, 3);
  const LocalizedFamily loc = localize(base, bump);
  const Vec4 inside(0.1, 0.2, -0.3, 0.4);
  const Vec4 outside(0.1, 3.0, 0.0, 0.0);
  const Vec4 shell(0.1, 1.4, 0.0, -1.7);
  EXPECT_EQ(loc.family().evaluate(0.3, inside), base.evaluate(0.3, inside));
  EXPECT_EQ(loc.family().evaluate(0.3, outside), minkowski());
  EXPECT_EQ(loc.family().evaluate(0.0, shell), minkowski());
  const Mat4 chi_deriv = bump.value(shell) * base.parameter_derivative(shell);
  EXPECT_LE((loc.family().parameter_derivative(shell) - chi_deriv).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((loc.family().finite_difference_derivative(shell) - chi_deriv).cwiseAbs().maxCoeff(),
            1e-8);
}

TEST(Localize, RejectsSupportOutsideChart) {
  const MetricFamily base = families::schwarzschild(1.0);
  const BumpProfile bump(make_box({0, 3, 0, 0}, {1, 4, 1, 1}), make_box({-1, 2, -1, -1}, {2, 5, 2, 2}),
                         ProfileKind::Mollifier);
  EXPECT_THROW(localize(base, bump), DomainError);
}

TEST(TensorGrid, RoundTripAndMultilinearInterpolation) {
  GridAxes axes;
  axes.chart = "cartesian";
  axes.names = {"t", "x", "y", "z"};
  axes.origin = {0.0, -1.0, 0.5, 2.0};
  axes.spacing = {0.5, 0.25, 1.0, 0.125};
  axes.shape = {3, 5, 2, 4};
  auto f = [](const Vec4& x) {
    Mat4 t = Mat4::Zero();
    t(0, 0) = 1.0 + x[0] + 2.0 * x[1] - x[2] + 0.5 * x[3];
    t(0, 3) = t(3, 0) = x[0] * x[1];
    t(2, 2) = 3.0;
    return t;
  };
  const TensorGrid grid = TensorGrid::tabulate(axes, f);
  std::stringstream ss;
  grid.write(ss);
  const TensorGrid back = TensorGrid::read(ss);
  for (std::size_t k = 0; k < axes.point_count(); ++k) {
    EXPECT_EQ(back.at(back.unflatten(k)), grid.at(grid.unflatten(k)));
  }
  const Vec4 x(0.3, -0.6, 1.1, 2.2);
  EXPECT_NEAR(back.interpolate(x)(0, 0), f(x)(0, 0), 1e-13);
  EXPECT_NEAR(back.interpolate(x)(3, 0), f(x)(3, 0), 1e-13);
  EXPECT_THROW(back.interpolate(Vec4(5.0, 0.0, 1.0, 2.0)), DomainError);
}

TEST(TensorGrid, RejectsMalformedHeader) {
  std::stringstream ss("# qcrb tensor grid v1\nchart cartesian\nshape 1 1 1\n");
  EXPECT_THROW(TensorGrid::read(ss), ConfigError);
  std::stringstream bad("not a grid\n");
  EXPECT_THROW(TensorGrid::read(bad), ConfigError);
}
