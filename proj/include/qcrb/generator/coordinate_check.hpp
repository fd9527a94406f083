#pragma once

#include "qcrb/generator/generator.hpp"

namespace qcrb {

/// Compact test tensors on flat spacetime in spherical coordinates (t, r, theta, phi),
/// supported in K = [t1, t2] x [r1, r2] x S^2 and vanishing outside.
///
/// Both use the window w(x) = (4 (x - a)(b - x) / (b - a)^2)^6 on each of t and r,
/// f = w(t), s = w(r). The conserved tensor has T^tt = f s'/r^2, T^tr = -f' s/r^2,
/// T^rr = f s and r^2 T^thth = r^2 sin^2 T^phph = q with
/// q = (r/2)(d_t T^tr + d_r T^rr) + T^rr, which makes nabla_mu T^{mu nu} = 0.
StressEnergyField conserved_spherical_test_tensor(const CoordinateBox& K);

/// T^rr = b, r^2 T^thth = r^2 sin^2 T^phph = b with b = f s; its divergence
/// has a nonzero radial component.
StressEnergyField nonconserved_spherical_test_tensor(const CoordinateBox& K);

struct CoordinateCheckOptions {
  /// Panels per axis on the bump support (one-point Gauss-Legendre); the coarse pass uses half.
  int resolution = 32;
  /// Midpoint samples per axis for the divergence residual.
  int residual_samples = 8;
  /// Relative divergence residual above which the tensor is classed as non-conserved.
  double conservation_tolerance = 1e-6;
};

struct CoordinateCheckReport {
  double P_schwarzschild = 0.0;
  double P_isotropic = 0.0;
  /// B - integral of X_nu nabla_mu T^{mu nu} sqrt|g| with X the radial generator.
  double angular_integral = 0.0;
  /// Integral of (r T^thth + r sin^2 T^phph) r^2 sin theta evaluated directly.
  double angular_integral_direct = 0.0;
  double boundary_term = 0.0;
  /// max |nabla_mu T^{mu nu}| * L / max |T|, with L the smallest restricted width of K.
  double divergence_residual = 0.0;
  /// Richardson estimates at the fine resolution.
  double quadrature_error = 0.0;
  double angular_quadrature_error = 0.0;
  /// |P_I - P_S| at the coarse resolution (half the panels).
  double coarse_difference = 0.0;
  bool conserved = true;

  double difference() const { return P_isotropic - P_schwarzschild; }
};

/// Both mass-perturbation charts at m0 = 0, each localized with a mollifier bump whose
/// plateau is K (restricted in t and r) and whose support extends K by 1/6 of its width
/// on each side, integrated over the support.
CoordinateCheckReport coordinate_independence_check(const StressEnergyField& testT,
                                                    const CoordinateBox& K,
                                                    const CoordinateCheckOptions& opts = {});

/// Default K: t in [0, 1], r in [1, 2], full sphere.
CoordinateBox default_test_region();

struct ProperTimeReduction {
  double kappa = 0.0;            // <P> / H from 4D quadrature, expected (1/2) int a dt
  double lapse_integral = 0.0;   // int a dt by 1D quadrature
  double crlb_s = 0.0;           // hbar^2 / (4 kappa^2 <dH^2>)
  double crlb_tau = 0.0;         // (int a dt)^2 / 4 * crlb_s
  double product = 0.0;          // crlb_tau * <dH^2>
  double expected = 0.0;         // hbar^2 / 4
};

/// Uniform lapse perturbation g_00 = -1 + s a(t) over `region` probed by a static,
/// spatially uniform energy density; the time-energy relation follows.
ProperTimeReduction proper_time_reduction(const std::function<double(double)>& lapse_profile,
                                          const RegionSpec& region, double energy_variance,
                                          double hbar);

struct ComponentReduction {
  int mu0 = 0;
  int nu0 = 0;
  double multiplicity = 1.0;  // <P> / int T^{mu0 nu0}: 1/2 diagonal, 1 off-diagonal
  double crlb = 0.0;          // hbar^2 / (4 <dP^2>)
  double product = 0.0;       // crlb * <(d int T^{mu0 nu0})^2>
  double expected = 0.0;      // hbar^2 diagonal, hbar^2 / 4 off-diagonal
};

/// Constant component perturbation eta + theta e_{mu0 nu0} of flat spacetime.
ComponentReduction component_reduction(int mu0, int nu0, const StressEnergyField& T,
                                       const RegionSpec& region, double component_variance,
                                       double hbar);

}  // namespace qcrb
