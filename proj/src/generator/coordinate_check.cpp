#include "qcrb/generator/coordinate_check.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qcrb/metric/families.hpp"

namespace qcrb {

namespace {

// w(x) = (4 (x - a)(b - x) / (b - a)^2)^k, peak 1 at the midpoint, and its first two
// derivatives. Power 6 keeps every component of the test tensors C^3 across the edge of K.
constexpr int kWindowPower = 6;

struct Window {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

Window window(double x, double a, double b) {
  const double scale = 4.0 / ((b - a) * (b - a));
  const double u = scale * (x - a) * (b - x);
  const double du = scale * (a + b - 2.0 * x);
  const double ddu = -2.0 * scale;
  const int k = kWindowPower;
  const double uk2 = std::pow(u, k - 2);
  Window out;
  out.v = uk2 * u * u;
  out.d1 = k * uk2 * u * du;
  out.d2 = k * uk2 * ((k - 1) * du * du + u * ddu);
  return out;
}

bool inside_tr(const CoordinateBox& K, const Vec4& x) {
  return x[0] > K.lo[0] && x[0] < K.hi[0] && x[1] > K.lo[1] && x[1] < K.hi[1];
}

Mat4 angular_fill(Mat4 t, double q, const Vec4& x) {
  const double r2 = x[1] * x[1];
  const double st = std::sin(x[2]);
  t(2, 2) = q / r2;
  t(3, 3) = q / (r2 * st * st);
  return t;
}

}  // namespace

StressEnergyField conserved_spherical_test_tensor(const CoordinateBox& K) {
  return StressEnergyField("conserved-spherical-test", [K](const Vec4& x) {
    Mat4 t = Mat4::Zero();
    if (!inside_tr(K, x)) return t;
    const double r = x[1];
    const Window f = window(x[0], K.lo[0], K.hi[0]);
    const Window s = window(r, K.lo[1], K.hi[1]);
    const double r2 = r * r;
    t(0, 0) = f.v * s.d1 / r2;
    t(0, 1) = t(1, 0) = -f.d1 * s.v / r2;
    t(1, 1) = f.v * s.v;
    const double dt_tr = -f.d2 * s.v / r2;
    const double q = 0.5 * r * (dt_tr + f.v * s.d1) + f.v * s.v;
    return angular_fill(t, q, x);
  });
}

StressEnergyField nonconserved_spherical_test_tensor(const CoordinateBox& K) {
  return StressEnergyField("nonconserved-spherical-test", [K](const Vec4& x) {
    Mat4 t = Mat4::Zero();
    if (!inside_tr(K, x)) return t;
    const double b = window(x[0], K.lo[0], K.hi[0]).v *
                     window(x[1], K.lo[1], K.hi[1]).v;
    t(1, 1) = b;
    return angular_fill(t, b, x);
  });
}

CoordinateBox default_test_region() {
  CoordinateBox K;
  K.lo = {0.0, 1.0, 0.0, 0.0};
  K.hi = {1.0, 2.0, kPi, 2.0 * kPi};
  return K;
}

CoordinateCheckReport coordinate_independence_check(const StressEnergyField& testT,
                                                    const CoordinateBox& K,
                                                    const CoordinateCheckOptions& opts) {
  if (opts.resolution < 4 || opts.resolution % 2 != 0) {
    throw ConfigError("coordinate_check.resolution", "must be even and at least 4");
  }
  CoordinateBox support = K;
  for (int a = 0; a < 2; ++a) {
    const double margin = (K.hi[a] - K.lo[a]) / 6.0;
    support.lo[a] -= margin;
    support.hi[a] += margin;
  }
  if (!(support.lo[1] > 0.0)) {
    throw ConfigError("coordinate_check.K", "radial support must stay at r > 0");
  }
  const BumpProfile bump(K, support, ProfileKind::Mollifier, 0, {true, true, false, false});
  const LocalizedFamily schw = localize(families::schwarzschild(0.0), bump);
  const LocalizedFamily iso = localize(families::isotropic(0.0), bump);

  RegionSpec region;
  region.box = support;
  region.rule = QuadratureRule::GaussLegendre;
  region.points_per_panel = 1;
  region.resolution.fill(opts.resolution);
  RegionSpec coarse = region;
  coarse.resolution.fill(opts.resolution / 2);
  const double gain = std::pow(2.0, region.order()) - 1.0;

  const GeneratorResult ps = integrate_generator(testT, schw, region);
  const GeneratorResult pi = integrate_generator(testT, iso, region);

  CoordinateCheckReport rep;
  rep.P_schwarzschild = ps.P_total;
  rep.P_isotropic = pi.P_total;
  rep.quadrature_error = ps.quadrature_error_estimate + pi.quadrature_error_estimate;
  rep.coarse_difference = std::abs(pi.P_coarse - ps.P_coarse);

  const MetricEvaluator flat = [fam = families::schwarzschild(0.0)](const Vec4& x) {
    return fam.fiducial(x);
  };
  const VectorField X = schwarzschild_isotropic_generator();

  StencilOptions stencil;
  for (int a = 0; a < 4; ++a) stencil.step[a] = 1e-4 * (support.hi[a] - support.lo[a]);

  auto divergence = [&](const Vec4& x) -> Vec4 {
    bool any = !testT.at(x).isZero(0.0);
    for (int a = 0; a < 4 && !any; ++a) {
      Vec4 e = Vec4::Zero();
      e[a] = stencil.step[a];
      any = !testT.at(x + e).isZero(0.0) || !testT.at(x - e).isZero(0.0);
    }
    if (!any) return Vec4::Zero();
    return covariant_divergence(testT, flat, x, stencil);
  };

  auto angular_channels = [&](const Vec4& x) {
    const Mat4 t = testT.at(x);
    const double r = x[1];
    const double st = std::sin(x[2]);
    const double direct = (r * t(2, 2) + r * st * st * t(3, 3)) * r * r * st;
    const Mat4 g = flat(x);
    const double sqrt_g = std::sqrt(std::abs(g.determinant()));
    const double source = divergence(x).dot(g * X(x)) * sqrt_g;
    return std::array<double, 2>{direct, source};
  };
  const auto fine = integrate_box<2>(region, angular_channels);
  const auto rough = integrate_box<2>(coarse, angular_channels);

  RegionSpec plateau = region;
  plateau.box = K;
  rep.boundary_term = boundary_term(testT, X, plateau, flat);
  rep.angular_integral_direct = fine[0];
  rep.angular_integral = rep.boundary_term - fine[1];
  rep.angular_quadrature_error = std::abs(fine[1] - rough[1]) / gain;

  // Divergence residual on interior midpoints of K.
  const int n = std::max(2, opts.residual_samples);
  double max_div = 0.0;
  double max_t = 0.0;
  for (int i = 0; i < n * n * n * n; ++i) {
    Vec4 x;
    int k = i;
    for (int a = 3; a >= 0; --a) {
      const int idx = k % n;
      k /= n;
      x[a] = K.lo[a] + (K.hi[a] - K.lo[a]) * (idx + 0.5) / n;
    }
    max_t = std::max(max_t, testT.at(x).cwiseAbs().maxCoeff());
    max_div = std::max(max_div, divergence(x).cwiseAbs().maxCoeff());
  }
  const double length = std::min(K.hi[0] - K.lo[0], K.hi[1] - K.lo[1]);
  rep.divergence_residual = max_t > 0.0 ? max_div * length / max_t : 0.0;
  rep.conserved = rep.divergence_residual <= opts.conservation_tolerance;
  return rep;
}

ProperTimeReduction proper_time_reduction(const std::function<double(double)>& lapse_profile,
                                          const RegionSpec& region, double energy_variance,
                                          double hbar) {
  if (!(energy_variance > 0.0)) throw ConfigError("probe.energy_variance", "must be positive");
  const MetricFamily family = families::uniform_lapse(lapse_profile, 0.0);
  const StressEnergyField T("uniform-energy", [](const Vec4&) {
    Mat4 t = Mat4::Zero();
    t(0, 0) = 1.0;
    return t;
  });
  const GeneratorResult P = integrate_generator(T, family, region);
  double spatial_volume = 1.0;
  for (int a = 1; a < 4; ++a) spatial_volume *= region.box.hi[a] - region.box.lo[a];

  ProperTimeReduction out;
  out.kappa = P.P_total / spatial_volume;
  out.lapse_integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      lapse_profile, region.box.lo[0], region.box.hi[0], 15, 1e-14);
  if (out.kappa == 0.0) throw NumericalError("proper_time_reduction: lapse profile integrates to 0");
  out.crlb_s = hbar * hbar / (4.0 * out.kappa * out.kappa * energy_variance);
  out.crlb_tau = 0.25 * out.lapse_integral * out.lapse_integral * out.crlb_s;
  out.product = out.crlb_tau * energy_variance;
  out.expected = 0.25 * hbar * hbar;
  return out;
}

ComponentReduction component_reduction(int mu0, int nu0, const StressEnergyField& T,
                                       const RegionSpec& region, double component_variance,
                                       double hbar) {
  if (!(component_variance > 0.0)) {
    throw ConfigError("probe.component_variance", "must be positive");
  }
  const MetricFamily family = families::component_perturbation(mu0, nu0, 0.0);
  const GeneratorResult P = integrate_generator(T, family, region);
  const double component = integrate_box<1>(region, [&](const Vec4& x) {
    return std::array<double, 1>{T.at(x)(mu0, nu0)};
  })[0];
  if (component == 0.0) {
    throw NumericalError("component_reduction: probe has no T^{mu0 nu0} content in the region");
  }
  ComponentReduction out;
  out.mu0 = mu0;
  out.nu0 = nu0;
  out.multiplicity = P.P_total / component;
  const double var_p = out.multiplicity * out.multiplicity * component_variance;
  out.crlb = hbar * hbar / (4.0 * var_p);
  out.product = out.crlb * component_variance;
  out.expected = mu0 == nu0 ? hbar * hbar : 0.25 * hbar * hbar;
  return out;
}

}  // namespace qcrb
