#pragma once

#include <functional>

#include "qcrb/generator/quadrature.hpp"
#include "qcrb/metric/metric_family.hpp"
#include "qcrb/stress/stress_energy.hpp"

namespace qcrb {

/// Contravariant vector field X^mu(x).
using VectorField = std::function<Vec4(const Vec4&)>;

/// 1/2 sqrt|det g(theta0, x)| T^{mu nu}(x) d g_{mu nu} / d theta (x).
double generator_density(const StressEnergyField& T, const MetricFamily& family, const Vec4& x);
double generator_density(const StressEnergyField& T, const LocalizedFamily& family, const Vec4& x);

struct GeneratorResult {
  double P_total = 0.0;
  double P_K = 0.0;
  double P_shell = 0.0;
  double boundary_term = 0.0;
  double quadrature_error_estimate = 0.0;
  /// Same integral at half the resolution; the error estimate compares the two.
  double P_coarse = 0.0;
  /// The region does not contain the bump support, so part of the perturbation is missed.
  bool support_clipped = false;
  /// quadrature_error_estimate <= tolerance.
  bool converged = true;
};

struct GeneratorOptions {
  double tolerance = std::numeric_limits<double>::infinity();
  /// When set, boundary_term integrates n_mu T^{mu nu} X_nu over the plateau faces
  /// (or over the region faces for an unlocalized family).
  VectorField boundary_field;
};

/// Mean generator <P> over the region. For an unlocalized family every node counts
/// toward P_K. The error estimate is |Q(n) - Q(n/2)| / (2^p - 1) with p the rule order.
GeneratorResult integrate_generator(const StressEnergyField& T, const MetricFamily& family,
                                    const RegionSpec& region, const GeneratorOptions& opts = {});
GeneratorResult integrate_generator(const StressEnergyField& T, const LocalizedFamily& family,
                                    const RegionSpec& region, const GeneratorOptions& opts = {});

/// Sum over the faces of `region.box` of the outward flux of V^a = T^{a nu} X_nu with the
/// coordinate surface element sqrt|det g| d^3x; equals integral of nabla_mu(T^{mu nu} X_nu).
/// Throws DomainError when a face has zero coordinate area.
double boundary_term(const StressEnergyField& T, const VectorField& X, const RegionSpec& region,
                     const MetricEvaluator& g);

/// X = d x^mu / dm of the Schwarzschild-to-isotropic map at m = 0, i.e. the unit radial field.
VectorField schwarzschild_isotropic_generator();

}  // namespace qcrb
