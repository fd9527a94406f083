#include "qcrb/generator/generator.hpp"

#include <cmath>
#include <string>

namespace qcrb {

namespace {

double density_with(const StressEnergyField& T, const MetricFamily& family, const Vec4& x) {
  const Mat4 g0 = family.fiducial(x);
  const double det = g0.determinant();
  if (!std::isfinite(det)) throw NumericalError("generator_density: non-finite metric determinant");
  const Mat4 t = T.at(x);
  if (t.isZero(0.0)) return 0.0;
  return 0.5 * std::sqrt(std::abs(det)) * t.cwiseProduct(family.parameter_derivative(x)).sum();
}

using Classifier = std::function<bool(const Vec4&)>;

GeneratorResult integrate(const StressEnergyField& T, const MetricFamily& family,
                          const RegionSpec& region, const Classifier& on_plateau,
                          const GeneratorOptions& opts, const MetricEvaluator& g,
                          const RegionSpec* boundary_region) {
  if (!family.domain().contains(region.box)) {
    throw DomainError("integrate_generator: region leaves the chart of family " + family.name());
  }
  auto channels = [&](const Vec4& x) {
    const double d = density_with(T, family, x);
    if (!on_plateau || on_plateau(x)) return std::array<double, 2>{d, 0.0};
    return std::array<double, 2>{0.0, d};
  };
  const auto fine = integrate_box<2>(region, channels);

  RegionSpec coarse_region = region;
  for (int& n : coarse_region.resolution) n = std::max(2, (n + 1) / 2);
  const auto coarse = integrate_box<2>(coarse_region, channels);

  GeneratorResult r;
  r.P_K = fine[0];
  r.P_shell = fine[1];
  r.P_total = r.P_K + r.P_shell;
  r.P_coarse = coarse[0] + coarse[1];
  const double gain = std::pow(2.0, region.order()) - 1.0;
  r.quadrature_error_estimate = std::abs(r.P_total - r.P_coarse) / gain;
  r.converged = r.quadrature_error_estimate <= opts.tolerance;
  if (opts.boundary_field) {
    r.boundary_term = boundary_term(T, opts.boundary_field, *boundary_region, g);
  }
  return r;
}

}  // namespace

double generator_density(const StressEnergyField& T, const MetricFamily& family, const Vec4& x) {
  return density_with(T, family, x);
}

double generator_density(const StressEnergyField& T, const LocalizedFamily& family, const Vec4& x) {
  return density_with(T, family.family(), x);
}

GeneratorResult integrate_generator(const StressEnergyField& T, const MetricFamily& family,
                                    const RegionSpec& region, const GeneratorOptions& opts) {
  region.validate();
  MetricEvaluator g = [&family](const Vec4& x) { return family.fiducial(x); };
  return integrate(T, family, region, {}, opts, g, &region);
}

GeneratorResult integrate_generator(const StressEnergyField& T, const LocalizedFamily& family,
                                    const RegionSpec& region, const GeneratorOptions& opts) {
  region.validate();
  const BumpProfile& bump = family.bump();
  bool clipped = false;
  for (int a = 0; a < 4; ++a) {
    if (!bump.restricted(a)) continue;
    if (region.box.lo[a] > bump.support().lo[a] || region.box.hi[a] < bump.support().hi[a]) {
      clipped = true;
    }
  }
  RegionSpec plateau_region = region;
  for (int a = 0; a < 4; ++a) {
    if (bump.restricted(a)) {
      plateau_region.box.lo[a] = bump.plateau().lo[a];
      plateau_region.box.hi[a] = bump.plateau().hi[a];
    }
  }
  MetricEvaluator g = [&family](const Vec4& x) { return family.family().fiducial(x); };
  GeneratorResult r = integrate(
      T, family.family(), region, [&bump](const Vec4& x) { return bump.on_plateau(x); }, opts, g,
      &plateau_region);
  r.support_clipped = clipped;
  return r;
}

double boundary_term(const StressEnergyField& T, const VectorField& X, const RegionSpec& region,
                     const MetricEvaluator& g) {
  for (int a = 0; a < 4; ++a) {
    if (!(region.box.hi[a] > region.box.lo[a])) {
      throw DomainError("boundary_term: degenerate face, axis " + std::to_string(a) +
                        " has zero width");
    }
  }
  CompensatedSum total;
  for (int a = 0; a < 4; ++a) {
    auto flux = [&, a](const Vec4& x) {
      const Mat4 gm = g(x);
      const Vec4 x_lower = gm * X(x);
      const double v = T.at(x).row(a).dot(x_lower);
      return std::array<double, 1>{std::sqrt(std::abs(gm.determinant())) * v};
    };
    total.add(integrate_face<1>(region, a, region.box.hi[a], flux)[0]);
    total.add(-integrate_face<1>(region, a, region.box.lo[a], flux)[0]);
  }
  return total.value();
}

VectorField schwarzschild_isotropic_generator() {
  return [](const Vec4&) { return Vec4(0.0, 1.0, 0.0, 0.0); };
}

}  // namespace qcrb
