#pragma once

#include <functional>
#include <vector>

#include "qcrb/core/tensor_grid.hpp"
#include "qcrb/metric/metric_family.hpp"

namespace qcrb::families {

/// Transverse-traceless plus-polarized wave along z in the broadband limit:
/// h_xx = -h_yy = A f(z - t), with f = 1 unless an envelope is given.
/// Chart (t, x, y, z), parameter A.
MetricFamily gw_plane_wave(double amplitude0 = 0.0,
                           std::function<double(double)> envelope = {});

/// eta + theta e_{mu0 nu0} on a Cartesian chart. Off-diagonal components
/// perturb both (mu0, nu0) and (nu0, mu0) so the metric stays symmetric.
MetricFamily component_perturbation(int mu0, int nu0, double theta0 = 0.0);

/// g_00 = -1 + s a(t), other components Minkowski. Parameter s.
MetricFamily uniform_lapse(std::function<double(double)> lapse_profile, double s0 = 0.0);

/// Schwarzschild line element in (t, r, theta, phi); parameter m. The chart
/// excludes r <= 2.5 m0 to keep quadrature away from the horizon.
MetricFamily schwarzschild(double m0);

/// Isotropic Schwarzschild coordinates (t, rho, theta, phi); parameter m.
/// Excludes the image of r <= 2.5 m0.
MetricFamily isotropic(double m0);

/// Closed matter-dominated FLRW in conformal time (eta, chi, theta, phi):
/// ds^2 = (a_max^2 / 4)(1 - cos eta)^2 [-d eta^2 + d chi^2 + sin^2 chi dOmega^2].
/// Parameter a_max.
MetricFamily flrw_closed_dust(double a_max);

/// de Sitter in conformal time: ds^2 = (3 / Lambda) sec^2 eta [ ... ]. Parameter Lambda.
MetricFamily de_sitter(double lambda);

/// First-order tabulated family g(theta) = g0 + (theta - theta0) dg, multilinear in x.
MetricFamily tabulated(TensorGrid metric_at_theta0, TensorGrid parameter_derivative,
                       double theta0 = 0.0);

struct CatalogEntry {
  MetricFamily family;
  /// Box inside the chart used for random derivative checks.
  CoordinateBox sample_box;
};

/// Every built-in family at a representative fiducial value.
std::vector<CatalogEntry> builtin_catalog();

}  // namespace qcrb::families
