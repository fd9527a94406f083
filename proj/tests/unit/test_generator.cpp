#include <chrono>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qcrb/generator/coordinate_check.hpp"
#include "qcrb/metric/families.hpp"

using namespace qcrb;

namespace {

CoordinateBox make_box(std::array<double, 4> lo, std::array<double, 4> hi) {
  CoordinateBox b;
  b.lo = lo;
  b.hi = hi;
  return b;
}

StressEnergyField uniform_wave(double e1) {
  return StressEnergyField::from_em([e1](const Vec4&) {
    EMField f;
    f.E[1] = e1;
    f.B[2] = e1;
    return f;
  });
}

// (u (1 - u))^2 on the unit box in every coordinate, times a fixed tensor.
StressEnergyField unit_box_blob(const Mat4& shape) {
  return StressEnergyField("blob", [shape](const Vec4& x) {
    double w = 1.0;
    for (int a = 0; a < 4; ++a) {
      if (x[a] <= 0.0 || x[a] >= 1.0) return Mat4(Mat4::Zero());
      w *= x[a] * x[a] * (1.0 - x[a]) * (1.0 - x[a]);
    }
    return Mat4(w * shape);
  });
}

Mat4 random_symmetric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

}  // namespace

TEST(Density, GravitationalWaveWithPlaneWave) {
  const MetricFamily gw = families::gw_plane_wave(0.0);
  const double e1 = 0.7;
  EXPECT_NEAR(generator_density(uniform_wave(e1), gw, Vec4(0.1, 0.2, 0.3, 0.4)),
              e1 * e1 / (8.0 * kPi), 1e-16);
}

TEST(Density, PressurelessDustCarriesNoSpatialComponent) {
  const StressEnergyField dust("dust", [](const Vec4&) {
    return dust_tensor(3.0, Vec4(1.0, 0.0, 0.0, 0.0));
  });
  EXPECT_EQ(generator_density(dust, families::component_perturbation(1, 1), Vec4::Zero()), 0.0);
  EXPECT_DOUBLE_EQ(generator_density(dust, families::component_perturbation(0, 0), Vec4::Zero()),
                   1.5);
}

TEST(Density, TraceNullForConformallyFlatFamilies) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<families::CatalogEntry> catalog = {
      {families::flrw_closed_dust(1.0), make_box({0.5, 0.1, 0.1, 0.0}, {5.5, 3.0, 3.0, 6.0})},
      {families::de_sitter(3.0), make_box({-1.2, 0.1, 0.1, 0.0}, {1.2, 3.0, 3.0, 6.0})}};
  for (const auto& entry : catalog) {
    const MetricEvaluator g = [&entry](const Vec4& x) { return entry.family.fiducial(x); };
    for (int i = 0; i < 200; ++i) {
      Vec4 x;
      for (int a = 0; a < 4; ++a) {
        x[a] = entry.sample_box.lo[a] +
               0.5 * (u(rng) + 1.0) * (entry.sample_box.hi[a] - entry.sample_box.lo[a]);
      }
      EMField f;
      f.E = Vec3(u(rng), u(rng), u(rng));
      f.B = Vec3(u(rng), u(rng), u(rng));
      const StressEnergyField T = StressEnergyField::em_on_diagonal_metric(
          [f](const Vec4&) { return f; }, g);
      const Mat4 t = T.at(x);
      const Mat4 d = entry.family.parameter_derivative(x);
      const double scale =
          0.5 * std::sqrt(std::abs(g(x).determinant())) * t.cwiseProduct(d).cwiseAbs().sum();
      EXPECT_LE(std::abs(generator_density(T, entry.family, x)), 1e-12 * scale)
          << entry.family.name();
    }
  }
}

TEST(Integrate, ConstantDensityOverBox) {
  RegionSpec region;
  region.box = make_box({0, -1, 0, 2}, {2, 1, 0.5, 3});
  region.resolution = {4, 4, 4, 4};
  const double e1 = 1.3;
  const GeneratorResult r = integrate_generator(uniform_wave(e1), families::gw_plane_wave(), region);
  const double V = region.box.volume();
  EXPECT_NEAR(r.P_total, V * e1 * e1 / (8.0 * kPi), 1e-14);
  EXPECT_EQ(r.P_shell, 0.0);
  EXPECT_LE(r.quadrature_error_estimate, 1e-14);
}

TEST(Integrate, ZeroStressEnergy) {
  RegionSpec region;
  region.box = make_box({0, 0, 0, 0}, {1, 1, 1, 1});
  region.resolution = {4, 4, 4, 4};
  const StressEnergyField zero("zero", [](const Vec4&) { return Mat4(Mat4::Zero()); });
  GeneratorOptions opts;
  opts.boundary_field = [](const Vec4&) { return Vec4(1, 1, 1, 1); };
  const GeneratorResult r = integrate_generator(zero, families::gw_plane_wave(), region, opts);
  EXPECT_EQ(r.P_total, 0.0);
  EXPECT_EQ(r.P_K, 0.0);
  EXPECT_EQ(r.P_shell, 0.0);
  EXPECT_EQ(r.boundary_term, 0.0);
  EXPECT_EQ(r.quadrature_error_estimate, 0.0);
}

TEST(Integrate, LinearInStressEnergy) {
  std::mt19937_64 rng(5);
  RegionSpec region;
  region.box = make_box({0, 0, 0, 0}, {1, 1, 1, 1});
  region.resolution = {6, 6, 6, 6};
  const MetricFamily fam = families::gw_plane_wave(0.0, [](double u) { return std::cos(2.0 * u); });
  for (int trial = 0; trial < 5; ++trial) {
    const Mat4 s1 = random_symmetric(rng);
    const Mat4 s2 = random_symmetric(rng);
    const double a = std::uniform_real_distribution<double>(-2, 2)(rng);
    const double b = std::uniform_real_distribution<double>(-2, 2)(rng);
    const StressEnergyField T1 = unit_box_blob(s1);
    const StressEnergyField T2 = unit_box_blob(s2);
    const StressEnergyField mix = unit_box_blob(a * s1 + b * s2);
    const double p1 = integrate_generator(T1, fam, region).P_total;
    const double p2 = integrate_generator(T2, fam, region).P_total;
    const double pm = integrate_generator(mix, fam, region).P_total;
    EXPECT_NEAR(pm, a * p1 + b * p2, 1e-12 * (std::abs(a * p1) + std::abs(b * p2)));
  }
}

TEST(Integrate, PlateauConsistency) {
  Mat4 shape = Mat4::Zero();
  shape(1, 1) = 1.0;
  shape(2, 2) = 0.25;
  const StressEnergyField T = unit_box_blob(shape);
  const MetricFamily base = families::gw_plane_wave(0.0, [](double u) { return 1.0 + 0.5 * u; });
  const BumpProfile bump(make_box({-0.25, -0.25, -0.25, -0.25}, {1.25, 1.25, 1.25, 1.25}),
                         make_box({-0.5, -0.5, -0.5, -0.5}, {1.5, 1.5, 1.5, 1.5}),
                         ProfileKind::Smoothstep, 3);
  const LocalizedFamily loc = localize(base, bump);

  // Panel edges fall on the faces of supp(T), so three-point Gauss-Legendre
  // integrates the degree-4 blob exactly on both grids.
  RegionSpec wide;
  wide.box = bump.support();
  wide.rule = QuadratureRule::GaussLegendre;
  wide.points_per_panel = 3;
  wide.resolution = {8, 8, 8, 8};
  RegionSpec tight = wide;
  tight.box = make_box({0, 0, 0, 0}, {1, 1, 1, 1});
  tight.resolution = {2, 2, 2, 2};

  const GeneratorResult localized = integrate_generator(T, loc, wide);
  const GeneratorResult plain = integrate_generator(T, base, tight);
  EXPECT_NEAR(localized.P_total, plain.P_total, 1e-10 * std::abs(plain.P_total));
  EXPECT_EQ(localized.P_shell, 0.0);
  EXPECT_FALSE(localized.support_clipped);
  EXPECT_NEAR(localized.P_total, localized.P_K + localized.P_shell,
              1e-12 * std::abs(localized.P_total));

  const GeneratorResult clipped = integrate_generator(T, loc, tight);
  EXPECT_TRUE(clipped.support_clipped);
}

TEST(Integrate, ShellCarriesTheTransitionRegion) {
  const MetricFamily base = families::gw_plane_wave(0.0);
  const BumpProfile bump(make_box({0.25, 0.25, 0.25, 0.25}, {0.75, 0.75, 0.75, 0.75}),
                         make_box({0, 0, 0, 0}, {1, 1, 1, 1}), ProfileKind::Smoothstep, 2);
  RegionSpec region;
  region.box = bump.support();
  region.resolution = {16, 16, 16, 16};
  const GeneratorResult r = integrate_generator(uniform_wave(1.0), localize(base, bump), region);
  EXPECT_GT(r.P_K, 0.0);
  EXPECT_GT(r.P_shell, 0.0);
  EXPECT_NEAR(r.P_total, r.P_K + r.P_shell, 1e-12 * r.P_total);
}

TEST(Integrate, RejectsRegionOutsideChart) {
  RegionSpec region;
  region.box = make_box({0, 1, 0.1, 0}, {1, 4, 3, 6});
  region.resolution = {2, 2, 2, 2};
  const StressEnergyField zero("zero", [](const Vec4&) { return Mat4(Mat4::Zero()); });
  EXPECT_THROW(integrate_generator(zero, families::schwarzschild(1.0), region), DomainError);
}

TEST(Integrate, NonConvergenceIsFlagged) {
  RegionSpec region;
  region.box = make_box({0, 0, 0, 0}, {1, 1, 1, 1});
  region.resolution = {4, 4, 4, 4};
  GeneratorOptions opts;
  opts.tolerance = 1e-12;
  const GeneratorResult r =
      integrate_generator(unit_box_blob(Vec4(0, 1, 0, 0).asDiagonal()), families::gw_plane_wave(),
                          region, opts);
  EXPECT_FALSE(r.converged);
}

TEST(Integrate, UniformLapseReducesToTimeIntegratedEnergy) {
  const double a = 0.8, H_density = 2.5;
  const MetricFamily lapse = families::uniform_lapse([a](double) { return a; });
  const StressEnergyField T("static", [H_density](const Vec4&) {
    Mat4 t = Mat4::Zero();
    t(0, 0) = H_density;
    return t;
  });
  RegionSpec region;
  region.box = make_box({0, 0, 0, 0}, {3, 1, 2, 0.5});
  region.resolution = {4, 4, 4, 4};
  const double H = H_density * 1.0 * 2.0 * 0.5;
  // The generator carries the 1/2 of the metric variation.
  EXPECT_NEAR(integrate_generator(T, lapse, region).P_total, 0.5 * H * a * 3.0, 1e-13);
}

TEST(Boundary, ShellFluxAndTrivialCases) {
  const MetricFamily flat = families::schwarzschild(0.0);
  const MetricEvaluator g = [&flat](const Vec4& x) { return flat.fiducial(x); };
  RegionSpec shell;
  shell.box = make_box({0, 1, 0, 0}, {1, 2, kPi, 2 * kPi});
  shell.rule = QuadratureRule::GaussLegendre;
  shell.points_per_panel = 6;
  shell.resolution = {2, 2, 4, 2};
  const StressEnergyField radial("radial", [](const Vec4&) {
    Mat4 t = Mat4::Zero();
    t(1, 1) = 1.0;
    return t;
  });
  const VectorField dr = schwarzschild_isotropic_generator();
  EXPECT_NEAR(boundary_term(radial, dr, shell, g), 4.0 * kPi * (4.0 - 1.0), 1e-10);
  EXPECT_EQ(boundary_term(radial, [](const Vec4&) { return Vec4(Vec4::Zero()); }, shell, g), 0.0);

  const CoordinateBox K = default_test_region();
  RegionSpec plateau = shell;
  plateau.box = K;
  EXPECT_NEAR(boundary_term(conserved_spherical_test_tensor(K), dr, plateau, g), 0.0, 1e-15);

  RegionSpec flat_box = shell;
  flat_box.box.hi[0] = flat_box.box.lo[0];
  EXPECT_THROW(boundary_term(radial, dr, flat_box, g), DomainError);
}

TEST(CoordinateCheck, ConservedTensorGivesNoDifference) {
  const CoordinateBox K = default_test_region();
  const auto t0 = std::chrono::steady_clock::now();
  const CoordinateCheckReport rep = coordinate_independence_check(conserved_spherical_test_tensor(K), K);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_TRUE(rep.conserved);
  EXPECT_LE(rep.divergence_residual, 1e-6);
  EXPECT_NE(rep.P_schwarzschild, 0.0);
  EXPECT_LE(std::abs(rep.difference()), rep.quadrature_error);
  EXPECT_GE(rep.coarse_difference, 3.0 * std::abs(rep.difference()));
  EXPECT_LT(seconds, 30.0);
}

TEST(CoordinateCheck, NonConservedTensorMatchesAngularIntegral) {
  const CoordinateBox K = default_test_region();
  const CoordinateCheckReport rep =
      coordinate_independence_check(nonconserved_spherical_test_tensor(K), K);
  EXPECT_FALSE(rep.conserved);
  EXPECT_GT(std::abs(rep.difference()), 100.0 * rep.quadrature_error);
  EXPECT_NEAR(rep.difference(), rep.angular_integral,
              rep.quadrature_error + rep.angular_quadrature_error);
  EXPECT_NEAR(rep.angular_integral, rep.angular_integral_direct, rep.angular_quadrature_error);
}

TEST(CoordinateCheck, ZeroTensor) {
  const CoordinateBox K = default_test_region();
  const StressEnergyField zero("zero", [](const Vec4&) { return Mat4(Mat4::Zero()); });
  CoordinateCheckOptions opts;
  opts.resolution = 8;
  const CoordinateCheckReport rep = coordinate_independence_check(zero, K, opts);
  EXPECT_EQ(rep.P_schwarzschild, 0.0);
  EXPECT_EQ(rep.P_isotropic, 0.0);
  EXPECT_EQ(rep.angular_integral, 0.0);
  EXPECT_EQ(rep.divergence_residual, 0.0);
  EXPECT_TRUE(rep.conserved);
}

TEST(Reductions, ProperTime) {
  RegionSpec region;
  region.box = make_box({0, 0, 0, 0}, {2, 1, 1, 1});
  region.rule = QuadratureRule::GaussLegendre;
  region.points_per_panel = 8;
  region.resolution = {4, 2, 2, 2};
  const auto a = [](double t) { return 1.0 + 0.5 * std::sin(t); };
  const ProperTimeReduction r = proper_time_reduction(a, region, 0.3, 1.0);
  EXPECT_NEAR(r.kappa, 0.5 * r.lapse_integral, 1e-12);
  EXPECT_NEAR(r.product, r.expected, 1e-9 * r.expected);
  EXPECT_DOUBLE_EQ(r.expected, 0.25);
}

TEST(Reductions, ComponentPerturbation) {
  RegionSpec region;
  region.box = make_box({0, 0, 0, 0}, {1, 1, 1, 1});
  region.resolution = {2, 2, 2, 2};
  const StressEnergyField dust("dust", [](const Vec4&) {
    return dust_tensor(2.0, Vec4(1.25, 0.75, 0.0, 0.0));
  });
  const double hbar = 1.5;
  const ComponentReduction diag = component_reduction(0, 0, dust, region, 0.7, hbar);
  EXPECT_NEAR(diag.multiplicity, 0.5, 1e-14);
  EXPECT_NEAR(diag.product, hbar * hbar, 1e-12);
  const ComponentReduction off = component_reduction(0, 1, dust, region, 0.7, hbar);
  EXPECT_NEAR(off.multiplicity, 1.0, 1e-14);
  EXPECT_NEAR(off.product, 0.25 * hbar * hbar, 1e-12);
  EXPECT_THROW(component_reduction(2, 3, dust, region, 0.7, hbar), NumericalError);
}
