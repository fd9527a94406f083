#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcrb/probe/gaussian_state.hpp"
#include "qcrb/probe/spectrum.hpp"

namespace qcrb {

enum class ReferenceKind { VacuumCoherent, SqueezedVacuum };

/// Variance model for the quadratic remainder F = (1/2) tau sum_k hbar omega_k da_k^+ da_k.
enum class RemainderModel {
  SingleMode,  // project F onto b: kappa = (1/2) tau hbar sum |c_k|^2 omega_k
  Lattice,     // full Wick formula over the occupied lattice, fluctuations still confined to b
};

/// Displaced reference state D(alpha) S_b(r)|0>. r squeezes X2 and anti-squeezes X1.
struct GaussianProbeState {
  ModeSpectrum spectrum;
  double squeeze_r = 0.0;
  ReferenceKind reference = ReferenceKind::VacuumCoherent;
  double hbar = 1.0;

  /// Throws ConfigError for r < 0, hbar <= 0, or a coherent reference with r != 0.
  void validate() const;
  /// Requires C > 0.
  EffectiveModeState moments() const;
};

/// X_i = sum_k (u_ik a_k + h.c.) with u_1k = (1/2) tau hbar omega_k conj(alpha_k)
/// and u_2 built from alpha_2 = i alpha_1.
struct QuadratureObservables {
  std::vector<cplx> u1;
  std::vector<cplx> u2;
};

QuadratureObservables quadrature_observables(const ModeSpectrum& spectrum, double hbar);

/// (1/2) tau hbar omega_k, the diagonal of the remainder operator.
std::vector<double> remainder_weights(const ModeSpectrum& spectrum, double hbar);

/// (var X1, var X2) from the Wick engine.
std::pair<double, double> quadrature_variances(const GaussianProbeState& state);

/// <(dF)^2>; zero for a coherent reference.
double reference_remainder_variance(const GaussianProbeState& state,
                                    RemainderModel model = RemainderModel::SingleMode);

struct CrlbReport {
  bool defined = true;  // false when C = 0
  double C = 0.0;
  double var_X1 = 0.0;
  double var_X2 = 0.0;
  double crlb = 0.0;                      // hbar^2 / (4 var X1)
  double crlb_minimum_uncertainty = 0.0;  // (hbar / 2C) sqrt(var X2 / var X1)
  double crlb_with_remainder = 0.0;       // hbar^2 / (4 (var X1 + var F))
  double shot_noise = 0.0;                // hbar / 2C
  double remainder_variance = 0.0;
  double remainder_ratio = 0.0;  // var F / var X1
  double heisenberg_ratio = 0.0;  // var X1 var X2 / (hbar C / 2)^2
  double commutator_residual = 0.0;
  std::size_t dc_excluded = 0;
  std::vector<std::string> warnings;
};

CrlbReport crlb_amplitude(const GaussianProbeState& state,
                          RemainderModel model = RemainderModel::SingleMode);

}  // namespace qcrb
