#pragma once

namespace qcrb {

struct CorrelatorOptions {
  /// Radial k range in units of the cutoff 1/width.
  double k_max_in_cutoffs = 10.0;
  int radial_panels = 400;
  int angular_panels = 200;
  int points_per_panel = 8;
};

struct CorrelatorCheck {
  double numeric = 0.0;
  double analytic = 0.0;
  double relative_error = 0.0;
};

/// Evaluates 2 pi^2 Re sum_k w_k (1/omega) exp(i (k.x - omega t)) exp(-omega^2 width^2 / 2)
/// on a spherical k-space lattice with x along z and compares with 1 / (|x|^2 - t^2).
/// Requires |x| > |t| + 3 width; throws DomainError otherwise.
CorrelatorCheck smeared_correlator_check(double t, double distance, double width,
                                         const CorrelatorOptions& opts = {});

}  // namespace qcrb
