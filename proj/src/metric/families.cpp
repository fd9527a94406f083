#include "qcrb/metric/families.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qcrb::families {

namespace {

ChartDomain spherical_domain(double r_min) {
  ChartDomain d;
  d.axes[1] = {r_min, std::numeric_limits<double>::infinity(), true, true};
  d.axes[2] = {0.0, kPi, false, false};
  return d;
}

Mat4 sphere_diag(double gtt, double grr, double r2_factor, double theta) {
  const double s = std::sin(theta);
  return Vec4(gtt, grr, r2_factor, r2_factor * s * s).asDiagonal();
}

// Spatial part of the closed-universe conformal line element.
Vec4 conformal_closed_diag(const Vec4& x) {
  const double sc = std::sin(x[1]);
  const double st = std::sin(x[2]);
  return Vec4(-1.0, 1.0, sc * sc, sc * sc * st * st);
}

ChartDomain conformal_domain(double eta_lo, double eta_hi) {
  ChartDomain d;
  d.axes[0] = {eta_lo, eta_hi, true, true};
  d.axes[1] = {0.0, kPi, false, false};
  d.axes[2] = {0.0, kPi, false, false};
  return d;
}

}  // namespace

MetricFamily gw_plane_wave(double amplitude0, std::function<double(double)> envelope) {
  auto profile = [envelope](const Vec4& x) { return envelope ? envelope(x[3] - x[0]) : 1.0; };
  return MetricFamily(
      "gw_plane_wave", "cartesian", amplitude0, ChartDomain{},
      [profile](double a, const Vec4& x) {
        Mat4 g = minkowski();
        const double h = a * profile(x);
        g(1, 1) += h;
        g(2, 2) -= h;
        return g;
      },
      [profile](const Vec4& x) {
        const double f = profile(x);
        return Mat4(Vec4(0.0, f, -f, 0.0).asDiagonal());
      });
}

MetricFamily component_perturbation(int mu0, int nu0, double theta0) {
  if (mu0 < 0 || mu0 > 3 || nu0 < 0 || nu0 > 3) {
    throw ConfigError("family.params", "component indices must be in 0..3");
  }
  auto unit = [mu0, nu0] {
    Mat4 e = Mat4::Zero();
    e(mu0, nu0) = 1.0;
    e(nu0, mu0) = 1.0;
    return e;
  }();
  return MetricFamily(
      "component_perturbation_" + std::to_string(mu0) + std::to_string(nu0), "cartesian", theta0,
      ChartDomain{}, [unit](double theta, const Vec4&) { return Mat4(minkowski() + theta * unit); },
      [unit](const Vec4&) { return unit; });
}

MetricFamily uniform_lapse(std::function<double(double)> lapse_profile, double s0) {
  return MetricFamily(
      "uniform_lapse", "cartesian", s0, ChartDomain{},
      [lapse_profile](double s, const Vec4& x) {
        Mat4 g = minkowski();
        g(0, 0) += s * lapse_profile(x[0]);
        return g;
      },
      [lapse_profile](const Vec4& x) {
        Mat4 d = Mat4::Zero();
        d(0, 0) = lapse_profile(x[0]);
        return d;
      });
}

MetricFamily schwarzschild(double m0) {
  return MetricFamily(
      "schwarzschild", "schwarzschild", m0, spherical_domain(std::max(2.5 * m0, 0.0)),
      [](double m, const Vec4& x) {
        const double r = x[1];
        const double f = 1.0 - 2.0 * m / r;
        return sphere_diag(-f, 1.0 / f, r * r, x[2]);
      },
      [m0](const Vec4& x) {
        const double r = x[1];
        const double f = 1.0 - 2.0 * m0 / r;
        return Mat4(Vec4(2.0 / r, 2.0 / (r * f * f), 0.0, 0.0).asDiagonal());
      });
}

MetricFamily isotropic(double m0) {
  // rho at which the areal radius equals 2.5 m0.
  const double rho_min = std::max(0.0, m0 * (1.5 + std::sqrt(1.25)) / 2.0);
  return MetricFamily(
      "isotropic", "isotropic", m0, spherical_domain(rho_min),
      [](double m, const Vec4& x) {
        const double rho = x[1];
        const double u = m / (2.0 * rho);
        const double lapse = (1.0 - u) / (1.0 + u);
        const double psi4 = std::pow(1.0 + u, 4);
        return sphere_diag(-lapse * lapse, psi4, psi4 * rho * rho, x[2]);
      },
      [m0](const Vec4& x) {
        const double rho = x[1];
        const double u = m0 / (2.0 * rho);
        const double lapse = (1.0 - u) / (1.0 + u);
        const double dgtt = 2.0 * lapse / (rho * (1.0 + u) * (1.0 + u));
        const double dpsi4 = 2.0 * std::pow(1.0 + u, 3) / rho;
        const double st = std::sin(x[2]);
        return Mat4(Vec4(dgtt, dpsi4, dpsi4 * rho * rho, dpsi4 * rho * rho * st * st).asDiagonal());
      });
}

MetricFamily flrw_closed_dust(double a_max) {
  if (!(a_max > 0.0)) throw ConfigError("family.params.a_max", "must be positive");
  auto metric = [](double a, const Vec4& x) {
    const double c = 1.0 - std::cos(x[0]);
    return Mat4((0.25 * a * a * c * c * conformal_closed_diag(x)).asDiagonal());
  };
  return MetricFamily("flrw_closed_dust", "conformal-flrw", a_max, conformal_domain(0.0, 2.0 * kPi),
                      metric,
                      [a_max, metric](const Vec4& x) { return Mat4(2.0 / a_max * metric(a_max, x)); });
}

MetricFamily de_sitter(double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("family.params.lambda", "must be positive");
  auto metric = [](double l, const Vec4& x) {
    const double sec = 1.0 / std::cos(x[0]);
    return Mat4((3.0 / l * sec * sec * conformal_closed_diag(x)).asDiagonal());
  };
  return MetricFamily("de_sitter", "conformal-de-sitter", lambda,
                      conformal_domain(-0.5 * kPi, 0.5 * kPi), metric,
                      [lambda, metric](const Vec4& x) { return Mat4(-metric(lambda, x) / lambda); });
}

MetricFamily tabulated(TensorGrid metric_at_theta0, TensorGrid parameter_derivative,
                       double theta0) {
  const CoordinateBox b0 = metric_at_theta0.axes().bounds();
  const CoordinateBox b1 = parameter_derivative.axes().bounds();
  for (int a = 0; a < 4; ++a) {
    if (b0.lo[a] != b1.lo[a] || b0.hi[a] != b1.hi[a]) {
      throw ConfigError("family.grid", "metric and derivative grids must cover the same box");
    }
  }
  ChartDomain d;
  for (int a = 0; a < 4; ++a) d.axes[a] = {b0.lo[a], b0.hi[a], false, false};
  const std::string chart = metric_at_theta0.axes().chart;
  return MetricFamily(
      "tabulated", chart, theta0, d,
      [g0 = std::move(metric_at_theta0), dg = parameter_derivative, theta0](double theta,
                                                                          const Vec4& x) {
        return Mat4(g0.interpolate(x) + (theta - theta0) * dg.interpolate(x));
      },
      [dg = parameter_derivative](const Vec4& x) { return dg.interpolate(x); });
}

std::vector<CatalogEntry> builtin_catalog() {
  auto box = [](std::array<double, 4> lo, std::array<double, 4> hi) {
    CoordinateBox b;
    b.lo = lo;
    b.hi = hi;
    return b;
  };
  const CoordinateBox cube = box({-1.0, -1.0, -1.0, -1.0}, {1.0, 1.0, 1.0, 1.0});
  const double eps = 0.1;
  std::vector<CatalogEntry> out;
  out.push_back({gw_plane_wave(0.0), cube});
  out.push_back({gw_plane_wave(1e-3, [](double u) { return std::cos(2.0 * u); }), cube});
  out.push_back({component_perturbation(0, 0), cube});
  out.push_back({component_perturbation(1, 1), cube});
  out.push_back({component_perturbation(0, 1), cube});
  out.push_back({component_perturbation(2, 3), cube});
  out.push_back({uniform_lapse([](double t) { return 1.0 + 0.5 * std::sin(t); }), cube});
  out.push_back({schwarzschild(1.0), box({0.0, 3.0, eps, 0.0}, {1.0, 10.0, kPi - eps, 2.0 * kPi})});
  out.push_back({isotropic(1.0), box({0.0, 2.0, eps, 0.0}, {1.0, 10.0, kPi - eps, 2.0 * kPi})});
  out.push_back({flrw_closed_dust(1.0),
                 box({0.5, eps, eps, 0.0}, {2.0 * kPi - 0.5, kPi - eps, kPi - eps, 2.0 * kPi})});
  out.push_back({de_sitter(3.0), box({-1.2, eps, eps, 0.0}, {1.2, kPi - eps, kPi - eps, 2.0 * kPi})});

  GridAxes axes;
  axes.spacing = {0.25, 0.25, 0.25, 0.25};
  axes.shape = {5, 5, 5, 5};
  const TensorGrid g0 = TensorGrid::tabulate(axes, [](const Vec4& x) {
    Mat4 m = minkowski();
    m(1, 1) += 0.1 * x[0] * x[1];
    return m;
  });
  const TensorGrid dg = TensorGrid::tabulate(axes, [](const Vec4& x) {
    Mat4 m = Mat4::Zero();
    m(0, 0) = 1.0 + x[2];
    m(1, 2) = m(2, 1) = x[3] - x[0];
    return m;
  });
  out.push_back({tabulated(g0, dg, 0.2), box({0.1, 0.1, 0.1, 0.1}, {0.9, 0.9, 0.9, 0.9})});
  return out;
}

}  // namespace qcrb::families
