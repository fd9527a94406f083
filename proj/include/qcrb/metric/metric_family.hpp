#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qcrb/core/types.hpp"
#include "qcrb/metric/bump.hpp"

namespace qcrb {

/// One-parameter family of metrics g_{mu nu}(x; theta) on a single chart.
///
/// Evaluation is pure and thread-safe. Every returned matrix is checked for
/// finiteness; points outside the chart raise DomainError.
class MetricFamily {
 public:
  using Evaluator = std::function<Mat4(double theta, const Vec4& x)>;
  using Derivative = std::function<Mat4(const Vec4& x)>;

  MetricFamily(std::string name, std::string chart, double theta0, ChartDomain domain,
               Evaluator eval, Derivative deriv = {});

  const std::string& name() const { return name_; }
  const std::string& chart() const { return chart_; }
  double theta0() const { return theta0_; }
  const ChartDomain& domain() const { return domain_; }
  bool has_analytic_derivative() const { return static_cast<bool>(deriv_); }

  Mat4 evaluate(double theta, const Vec4& x) const;
  Mat4 fiducial(const Vec4& x) const { return evaluate(theta0_, x); }

  /// d g_{mu nu} / d theta at theta0; analytic when available, else finite differences.
  Mat4 parameter_derivative(const Vec4& x) const;

  /// Central difference with step h = max(1e-6 |theta0|, 1e-8), Richardson-extrapolated once.
  Mat4 finite_difference_derivative(const Vec4& x) const;
  double finite_difference_step() const;

 private:
  void require_in_domain(const Vec4& x) const;

  std::string name_;
  std::string chart_;
  double theta0_;
  ChartDomain domain_;
  Evaluator eval_;
  Derivative deriv_;
};

/// Base family with its parameter perturbation multiplied by a bump profile:
/// g(theta, x) = base.g(theta0 + (theta - theta0) chi(x), x).
class LocalizedFamily {
 public:
  LocalizedFamily(MetricFamily base, BumpProfile bump);

  const MetricFamily& family() const { return localized_; }
  const MetricFamily& base() const { return base_; }
  const BumpProfile& bump() const { return bump_; }

 private:
  MetricFamily base_;
  BumpProfile bump_;
  MetricFamily localized_;
};

/// Throws DomainError if the bump's support leaves the base chart on a restricted axis.
LocalizedFamily localize(const MetricFamily& base, const BumpProfile& bump);

struct DerivativeCheck {
  int points = 0;
  /// Largest |analytic - fd| / (rel_tol |analytic| + abs_floor); passes when <= 1.
  double worst_ratio = 0.0;
  /// Largest |analytic - fd| / |analytic| over components with |analytic| > abs_floor.
  double max_relative_error = 0.0;
  bool passed = true;
};

/// Compares the analytic derivative with finite_difference_derivative at uniformly
/// random points of `sample_box`.
DerivativeCheck check_parameter_derivative(const MetricFamily& family,
                                           const CoordinateBox& sample_box, int points,
                                           std::uint64_t seed, double rel_tol = 1e-6,
                                           double abs_floor = 1e-10);

/// Exactly one negative eigenvalue and no zero eigenvalues.
bool is_lorentzian(const Mat4& g);

}  // namespace qcrb
