#pragma once

#include <cstdint>
#include <vector>

#include "qcrb/probe/probe.hpp"

namespace qcrb {

/// Counter-based normal deviates: draw i depends only on (seed, i), so any
/// partition of the index range yields the same samples.
class CounterNormal {
 public:
  explicit CounterNormal(std::uint64_t seed) : seed_(seed) {}
  double operator()(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

/// X2 readout: Normal(C A_true + offset, var_X2).
struct MeasurementModel {
  double offset = 0.0;
  double slope_C = 0.0;
  double var_X2 = 0.0;
  double A_true = 0.0;

  /// Built-in states read out in X2 (zero offset).
  static MeasurementModel from_state(const GaussianProbeState& state, double A_true);
  double mean() const { return slope_C * A_true + offset; }
};

/// Variances below this are treated as this value.
inline constexpr double kVarianceFloor = 1e-30;

/// N draws; throws ConfigError for N < 1.
std::vector<double> simulate_readout(const MeasurementModel& model, std::size_t N,
                                     std::uint64_t seed);

struct EstimatorRun {
  std::size_t N = 0;
  std::uint64_t seed = 0;
  std::vector<double> estimates;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance of single-shot estimates
  double analytic_variance = 0.0;  // var_X2 / C^2
  double standard_error = 0.0;     // sqrt(analytic_variance / N)
  bool unbiased = true;            // |mean - A_true| <= 5 standard errors
  /// |variance - analytic| / analytic against 3 sqrt(2 / N).
  double variance_relative_deviation = 0.0;
  bool variance_consistent = true;
};

/// A_i = (x_i - offset) / C. Throws ConfigError when C = 0.
EstimatorRun linear_estimator(const std::vector<double>& samples, const MeasurementModel& model,
                              std::uint64_t seed = 0);

/// C^2 / var_X2 for the Gaussian location family.
double classical_fisher(const MeasurementModel& model);

/// Fisher information of A from a 64-bin histogram over +-6 sigma of the samples:
/// sum_b (dp_b / dA)^2 / p_b with p_b from counts and dp_b / dA = -C dp_b / dx
/// estimated by central differences of the binned density.
double histogram_fisher(const std::vector<double>& samples, const MeasurementModel& model,
                        int bins = 64);

struct SaturationReport {
  double quantum_bound = 0.0;             // hbar^2 / (4 var X1)
  double classical_fisher_inverse = 0.0;  // 1 / F
  double ratio = 0.0;                     // (1 / F) / quantum_bound
  bool saturated = false;                 // |ratio - 1| <= 1e-9
};

SaturationReport crb_saturation_check(const GaussianProbeState& state,
                                      double var_X2_inflation = 1.0);

}  // namespace qcrb
