#include "qcrb/probe/correlator.hpp"

#include <cmath>
#include <vector>

#include "qcrb/core/summation.hpp"
#include "qcrb/core/types.hpp"
#include "qcrb/generator/quadrature.hpp"

namespace qcrb {

namespace {

AxisNodes interval_nodes(double lo, double hi, int panels, int points) {
  RegionSpec spec;
  spec.box.lo = {lo, 0.0, 0.0, 0.0};
  spec.box.hi = {hi, 1.0, 1.0, 1.0};
  spec.rule = QuadratureRule::GaussLegendre;
  spec.points_per_panel = points;
  spec.resolution = {panels, 2, 2, 2};
  return axis_nodes(spec, 0);
}

}  // namespace

CorrelatorCheck smeared_correlator_check(double t, double distance, double width,
                                         const CorrelatorOptions& opts) {
  if (!(width > 0.0)) throw ConfigError("correlator.width", "must be positive");
  if (!(distance > std::abs(t) + 3.0 * width)) {
    throw DomainError("smeared_correlator_check: separation within 3 widths of the light cone");
  }
  const double k_max = opts.k_max_in_cutoffs / width;
  const AxisNodes radial = interval_nodes(0.0, k_max, opts.radial_panels, opts.points_per_panel);
  const AxisNodes polar = interval_nodes(-1.0, 1.0, opts.angular_panels, opts.points_per_panel);

  std::vector<double> shells(radial.x.size());
  parallel_for(radial.x.size(), [&](std::size_t i) {
    const double k = radial.x[i];
    CompensatedSum s;
    for (std::size_t j = 0; j < polar.x.size(); ++j) {
      s.add(polar.w[j] * std::cos(k * distance * polar.x[j] - k * t));
    }
    // d^3k / (2 pi)^3 = k^2 dk dcos 2 pi / (2 pi)^3, with 1/omega = 1/k.
    const double cell = radial.w[i] * k * k / (4.0 * kPi * kPi);
    shells[i] = cell / k * std::exp(-0.5 * k * k * width * width) * s.value();
  });
  CompensatedSum total;
  for (double v : shells) total.add(v);

  CorrelatorCheck out;
  out.numeric = 2.0 * kPi * kPi * total.value();
  out.analytic = 1.0 / (distance * distance - t * t);
  out.relative_error = std::abs(out.numeric - out.analytic) / std::abs(out.analytic);
  return out;
}

}  // namespace qcrb
