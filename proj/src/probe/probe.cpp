#include "qcrb/probe/probe.hpp"

#include <cmath>
#include <limits>
#include <tuple>

namespace qcrb {

void GaussianProbeState::validate() const {
  if (!(hbar > 0.0)) throw ConfigError("probe.hbar", "must be positive");
  if (!(squeeze_r >= 0.0)) throw ConfigError("probe.squeeze_r", "must be non-negative");
  if (reference == ReferenceKind::VacuumCoherent && squeeze_r != 0.0) {
    throw ConfigError("probe.squeeze_r", "a coherent reference has r = 0; use squeezed-vacuum");
  }
  if (spectrum.alpha.size() != spectrum.lattice.size()) {
    throw ConfigError("probe.spectrum", "alpha and lattice sizes differ");
  }
}

EffectiveModeState GaussianProbeState::moments() const {
  validate();
  return EffectiveModeState(spectrum.alpha, effective_mode_coefficients(spectrum, hbar),
                            squeeze_r);
}

QuadratureObservables quadrature_observables(const ModeSpectrum& spectrum, double hbar) {
  const ModeSpectrum second = conjugate_spectrum(spectrum);
  QuadratureObservables q;
  q.u1.resize(spectrum.alpha.size());
  q.u2.resize(spectrum.alpha.size());
  for (std::size_t k = 0; k < q.u1.size(); ++k) {
    const double scale = 0.5 * spectrum.tau * hbar * spectrum.lattice[k].omega;
    q.u1[k] = scale * std::conj(spectrum.alpha[k]);
    q.u2[k] = scale * std::conj(second.alpha[k]);
  }
  return q;
}

std::vector<double> remainder_weights(const ModeSpectrum& spectrum, double hbar) {
  std::vector<double> w(spectrum.lattice.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = 0.5 * spectrum.tau * hbar * spectrum.lattice[k].omega;
  }
  return w;
}

std::pair<double, double> quadrature_variances(const GaussianProbeState& state) {
  const EffectiveModeState m = state.moments();
  const QuadratureObservables q = quadrature_observables(state.spectrum, state.hbar);
  return {m.linear_variance(q.u1), m.linear_variance(q.u2)};
}

double reference_remainder_variance(const GaussianProbeState& state, RemainderModel model) {
  state.validate();
  if (state.reference == ReferenceKind::VacuumCoherent || state.squeeze_r == 0.0) return 0.0;
  const EffectiveModeState m = state.moments();
  const std::vector<double> w = remainder_weights(state.spectrum, state.hbar);
  if (model == RemainderModel::Lattice) return m.diagonal_quadratic_variance(w);
  double kappa = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) kappa += std::norm(m.coefficients()[k]) * w[k];
  const double nb = m.N_b();
  return kappa * kappa * (nb * (nb + 1.0) + std::norm(m.M_b()));
}

CrlbReport crlb_amplitude(const GaussianProbeState& state, RemainderModel model) {
  state.validate();
  CrlbReport rep;
  rep.dc_excluded = state.spectrum.dc_excluded;
  rep.warnings = state.spectrum.warnings;
  rep.C = effective_constant_C(state.spectrum, state.hbar);
  if (!(rep.C > 0.0)) {
    rep.defined = false;
    rep.crlb = std::numeric_limits<double>::infinity();
    rep.warnings.push_back(
        "zero mean field (C = 0): the bound is undefined at mean-field level");
    return rep;
  }
  const double hbar = state.hbar;
  std::tie(rep.var_X1, rep.var_X2) = quadrature_variances(state);
  rep.crlb = hbar * hbar / (4.0 * rep.var_X1);
  rep.shot_noise = hbar / (2.0 * rep.C);
  rep.crlb_minimum_uncertainty = rep.shot_noise * std::sqrt(rep.var_X2 / rep.var_X1);
  rep.remainder_variance = reference_remainder_variance(state, model);
  rep.remainder_ratio = rep.remainder_variance / rep.var_X1;
  rep.crlb_with_remainder = hbar * hbar / (4.0 * (rep.var_X1 + rep.remainder_variance));
  const double vac = 0.5 * hbar * rep.C;
  rep.heisenberg_ratio = rep.var_X1 * rep.var_X2 / (vac * vac);
  const ModeSpectrum second = conjugate_spectrum(state.spectrum);
  const double comm = commutator_constant(state.spectrum.alpha, second.alpha,
                                          state.spectrum.lattice, state.spectrum.tau, hbar);
  rep.commutator_residual = std::abs(comm - rep.C) / rep.C;
  return rep;
}

}  // namespace qcrb
