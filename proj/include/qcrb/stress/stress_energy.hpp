#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "qcrb/core/tensor_grid.hpp"
#include "qcrb/core/types.hpp"

namespace qcrb {

using MetricEvaluator = std::function<Mat4(const Vec4&)>;

/// Electric and magnetic mean fields in Gaussian units with c = 1.
struct EMField {
  Vec3 E = Vec3::Zero();
  Vec3 B = Vec3::Zero();
};

using EMFieldConfig = std::function<EMField(const Vec4&)>;

/// Maxwell stress-energy T^{mu nu} in an orthonormal frame:
/// T^00 = (E^2 + B^2)/8pi, T^0i = (E x B)_i/4pi,
/// T^ij = (E^2 + B^2) delta_ij/8pi - (E_i E_j + B_i B_j)/4pi.
Mat4 em_stress_tensor(const EMField& field);
Mat4 em_stress_tensor(const EMFieldConfig& fields, const Vec4& x);

/// Linearly polarized wave moving along +x: E_y = B_z = waveform(t, x).
EMFieldConfig plane_wave_along_x(std::function<double(double t, double x)> waveform);

/// T^{mu nu} = rho u^mu u^nu.
Mat4 dust_tensor(double rho, const Vec4& u);

/// Classical mean stress-energy; either an analytic sampler or a tabulated grid.
class StressEnergyField {
 public:
  using Sampler = std::function<Mat4(const Vec4&)>;

  StressEnergyField(std::string label, Sampler sampler);

  static StressEnergyField from_em(EMFieldConfig fields, std::string label = "maxwell");
  /// Frame fields carried to chart components with the diagonal-metric tetrad
  /// e_a^mu = delta_a^mu / sqrt|g_aa|; requires g diagonal.
  static StressEnergyField em_on_diagonal_metric(EMFieldConfig frame_fields, MetricEvaluator metric,
                                                 std::string label = "maxwell-frame");
  static StressEnergyField from_grid(TensorGrid grid, std::string label = "grid");

  Mat4 at(const Vec4& x) const;
  const std::string& label() const { return label_; }
  /// Non-null when backed by tabulated samples.
  const TensorGrid* grid() const { return grid_.get(); }

 private:
  std::string label_;
  Sampler sampler_;
  std::shared_ptr<const TensorGrid> grid_;
};

/// g_{mu nu}(x) T^{mu nu}(x).
double trace(const StressEnergyField& T, const MetricEvaluator& g, const Vec4& x);

struct StencilOptions {
  std::array<double, 4> step{1e-3, 1e-3, 1e-3, 1e-3};
  int order = 2;  // 2 or 4
};

/// Christoffel symbols Gamma^a_{bc} from central differences of the metric;
/// element [a](b, c).
std::array<Mat4, 4> christoffel_symbols(const MetricEvaluator& g, const Vec4& x,
                                        const StencilOptions& opts = {});

/// nabla_mu T^{mu nu} using central-difference partials of T and finite-difference
/// Christoffel symbols. Grid-backed fields use the grid spacing as the step and
/// raise DomainError when the stencil leaves the grid.
Vec4 covariant_divergence(const StressEnergyField& T, const MetricEvaluator& g, const Vec4& x,
                          StencilOptions opts = {});

struct SupportRegion {
  CoordinateBox box;
  bool empty = true;
};

/// Smallest grid-aligned box holding every sample with some |T^{mu nu}| > tol * global max.
SupportRegion support_region(const TensorGrid& grid, double tol);
SupportRegion support_region(const StressEnergyField& T, double tol);

}  // namespace qcrb
