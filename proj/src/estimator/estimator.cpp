#include "qcrb/estimator/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "qcrb/core/summation.hpp"

namespace qcrb {

namespace {

// SplitMix64 finalizer applied to a Weyl sequence position.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_open_closed(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

double CounterNormal::operator()(std::uint64_t index) const {
  constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
  const std::uint64_t base = seed_ + 2 * index * gamma;
  const double u1 = unit_open_closed(mix64(base + gamma));
  const double u2 = unit_open_closed(mix64(base + 2 * gamma));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

MeasurementModel MeasurementModel::from_state(const GaussianProbeState& state, double A_true) {
  MeasurementModel m;
  m.slope_C = effective_constant_C(state.spectrum, state.hbar);
  m.var_X2 = quadrature_variances(state).second;
  m.A_true = A_true;
  return m;
}

std::vector<double> simulate_readout(const MeasurementModel& model, std::size_t N,
                                     std::uint64_t seed) {
  if (N < 1) throw ConfigError("simulation.N", "need at least one sample");
  std::vector<double> out(N, model.mean());
  if (model.var_X2 <= kVarianceFloor) return out;
  const double sigma = std::sqrt(model.var_X2);
  const CounterNormal normal(seed);
  constexpr std::size_t chunk = 1 << 14;
  const std::size_t chunks = (N + chunk - 1) / chunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(N, (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) out[i] += sigma * normal(i);
  });
  return out;
}

EstimatorRun linear_estimator(const std::vector<double>& samples, const MeasurementModel& model,
                              std::uint64_t seed) {
  if (model.slope_C == 0.0) throw ConfigError("probe", "C = 0: the readout carries no amplitude");
  if (samples.empty()) throw ConfigError("simulation.N", "need at least one sample");
  EstimatorRun run;
  run.N = samples.size();
  run.seed = seed;
  run.estimates.resize(samples.size());
  CompensatedSum sum;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    run.estimates[i] = (samples[i] - model.offset) / model.slope_C;
    sum.add(run.estimates[i]);
  }
  const double n = static_cast<double>(run.N);
  run.mean = sum.value() / n;
  CompensatedSum sq;
  for (double a : run.estimates) sq.add((a - run.mean) * (a - run.mean));
  run.variance = run.N > 1 ? sq.value() / (n - 1.0) : 0.0;
  run.analytic_variance =
      std::max(model.var_X2, kVarianceFloor) / (model.slope_C * model.slope_C);
  run.standard_error = std::sqrt(run.analytic_variance / n);
  run.unbiased = std::abs(run.mean - model.A_true) <= 5.0 * run.standard_error;
  run.variance_relative_deviation =
      std::abs(run.variance - run.analytic_variance) / run.analytic_variance;
  run.variance_consistent =
      model.var_X2 <= kVarianceFloor || run.variance_relative_deviation <= 3.0 * std::sqrt(2.0 / n);
  return run;
}

double classical_fisher(const MeasurementModel& model) {
  if (!(model.var_X2 > 0.0)) throw ConfigError("probe.var_X2", "must be positive");
  return model.slope_C * model.slope_C / model.var_X2;
}

double histogram_fisher(const std::vector<double>& samples, const MeasurementModel& model,
                        int bins) {
  if (bins < 3) throw ConfigError("histogram.bins", "need at least 3 bins");
  if (!(model.var_X2 > 0.0)) throw ConfigError("probe.var_X2", "must be positive");
  const double sigma = std::sqrt(model.var_X2);
  const double lo = model.mean() - 6.0 * sigma;
  const double width = 12.0 * sigma / bins;
  std::vector<double> counts(bins, 0.0);
  for (double x : samples) {
    const double u = (x - lo) / width;
    if (u < 0.0 || u >= bins) continue;
    counts[static_cast<int>(u)] += 1.0;
  }
  const double norm = 1.0 / (static_cast<double>(samples.size()) * width);
  CompensatedSum f;
  for (int b = 1; b + 1 < bins; ++b) {
    const double p = counts[b] * norm;
    if (p <= 0.0) continue;
    const double dp_dx = (counts[b + 1] - counts[b - 1]) * norm / (2.0 * width);
    const double dp_dA = -model.slope_C * dp_dx;
    f.add(dp_dA * dp_dA / p * width);
  }
  return f.value();
}

SaturationReport crb_saturation_check(const GaussianProbeState& state, double var_X2_inflation) {
  const auto [v1, v2] = quadrature_variances(state);
  MeasurementModel m;
  m.slope_C = effective_constant_C(state.spectrum, state.hbar);
  m.var_X2 = v2 * var_X2_inflation;
  SaturationReport rep;
  rep.quantum_bound = state.hbar * state.hbar / (4.0 * v1);
  rep.classical_fisher_inverse = 1.0 / classical_fisher(m);
  rep.ratio = rep.classical_fisher_inverse / rep.quantum_bound;
  rep.saturated = std::abs(rep.ratio - 1.0) <= 1e-9;
  return rep;
}

}  // namespace qcrb
