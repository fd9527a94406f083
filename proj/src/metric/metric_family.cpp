#include "qcrb/metric/metric_family.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qcrb {

namespace {

std::string describe(const Vec4& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ")";
  return os.str();
}

}  // namespace

MetricFamily::MetricFamily(std::string name, std::string chart, double theta0,
                           ChartDomain domain, Evaluator eval, Derivative deriv)
    : name_(std::move(name)),
      chart_(std::move(chart)),
      theta0_(theta0),
      domain_(domain),
      eval_(std::move(eval)),
      deriv_(std::move(deriv)) {}

void MetricFamily::require_in_domain(const Vec4& x) const {
  if (!domain_.contains(x)) {
    throw DomainError(name_ + ": point " + describe(x) + " outside " + chart_ + " chart domain");
  }
}

Mat4 MetricFamily::evaluate(double theta, const Vec4& x) const {
  require_in_domain(x);
  Mat4 g = eval_(theta, x);
  if (!all_finite(g)) {
    throw NumericalError(name_ + ": non-finite metric component at " + describe(x));
  }
  return g;
}

double MetricFamily::finite_difference_step() const {
  return std::max(1e-6 * std::abs(theta0_), 1e-8);
}

Mat4 MetricFamily::finite_difference_derivative(const Vec4& x) const {
  const double h = finite_difference_step();
  if (theta0_ + 0.5 * h == theta0_ || theta0_ - 0.5 * h == theta0_) {
    throw NumericalError(name_ + ": finite-difference step underflows parameter resolution");
  }
  auto central = [&](double step) {
    return Mat4((evaluate(theta0_ + step, x) - evaluate(theta0_ - step, x)) / (2.0 * step));
  };
  const Mat4 coarse = central(h);
  const Mat4 fine = central(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

Mat4 MetricFamily::parameter_derivative(const Vec4& x) const {
  if (!deriv_) return finite_difference_derivative(x);
  require_in_domain(x);
  Mat4 d = deriv_(x);
  if (!all_finite(d)) {
    throw NumericalError(name_ + ": non-finite parameter derivative at " + describe(x));
  }
  return d;
}

LocalizedFamily::LocalizedFamily(MetricFamily base, BumpProfile bump)
    : base_(std::move(base)),
      bump_(std::move(bump)),
      localized_(
          base_.name() + "+bump", base_.chart(), base_.theta0(), base_.domain(),
          [b = base_, chi = bump_](double theta, const Vec4& x) {
            return b.evaluate(b.theta0() + (theta - b.theta0()) * chi.value(x), x);
          },
          [b = base_, chi = bump_](const Vec4& x) {
            const double c = chi.value(x);
            if (c == 0.0) return Mat4(Mat4::Zero());
            return Mat4(c * b.parameter_derivative(x));
          }) {}

LocalizedFamily localize(const MetricFamily& base, const BumpProfile& bump) {
  for (int a = 0; a < 4; ++a) {
    if (!bump.restricted(a)) continue;
    const Interval& axis = base.domain().axes[a];
    if (!axis.contains(bump.support().lo[a]) || !axis.contains(bump.support().hi[a])) {
      throw DomainError(base.name() + ": bump support exceeds chart domain on axis " +
                        std::to_string(a));
    }
  }
  return LocalizedFamily(base, bump);
}

DerivativeCheck check_parameter_derivative(const MetricFamily& family,
                                           const CoordinateBox& sample_box, int points,
                                           std::uint64_t seed, double rel_tol, double abs_floor) {
  if (!family.has_analytic_derivative()) {
    throw ConfigError("family", family.name() + " has no analytic derivative to check");
  }
  std::mt19937_64 rng(seed);
  DerivativeCheck out;
  out.points = points;
  for (int p = 0; p < points; ++p) {
    Vec4 x;
    for (int a = 0; a < 4; ++a) {
      x[a] = std::uniform_real_distribution<double>(sample_box.lo[a], sample_box.hi[a])(rng);
    }
    const Mat4 analytic = family.parameter_derivative(x);
    const Mat4 fd = family.finite_difference_derivative(x);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double err = std::abs(analytic(i, j) - fd(i, j));
        const double mag = std::abs(analytic(i, j));
        out.worst_ratio = std::max(out.worst_ratio, err / (rel_tol * mag + abs_floor));
        if (mag > abs_floor) out.max_relative_error = std::max(out.max_relative_error, err / mag);
      }
    }
  }
  out.passed = out.worst_ratio <= 1.0;
  return out;
}

bool is_lorentzian(const Mat4& g) {
  Eigen::SelfAdjointEigenSolver<Mat4> solver(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
  const Vec4 ev = solver.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  int negative = 0;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(ev[i]) <= 1e-14 * scale) return false;
    if (ev[i] < 0.0) ++negative;
  }
  return negative == 1;
}

}  // namespace qcrb
