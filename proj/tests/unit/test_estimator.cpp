#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qcrb/estimator/estimator.hpp"

using namespace qcrb;

namespace {

GaussianProbeState mono_state(double r, double nbar = 1e4) {
  GaussianProbeState st;
  st.spectrum = spectra::monochromatic(2.0 * kPi * 10.0, nbar, 1.0);
  st.squeeze_r = r;
  st.reference = r > 0.0 ? ReferenceKind::SqueezedVacuum : ReferenceKind::VacuumCoherent;
  return st;
}

}  // namespace

TEST(Rng, CounterNormalIsPartitionInvariant) {
  const CounterNormal g(123);
  const CounterNormal h(123);
  const CounterNormal other(124);
  EXPECT_EQ(g(0), h(0));
  EXPECT_EQ(g(987654321), h(987654321));
  EXPECT_NE(g(5), other(5));
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = g(static_cast<std::uint64_t>(i));
    s += v;
    s2 += v * v;
  }
  EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(Readout, DeterministicForFixedSeed) {
  MeasurementModel m{0.5, 2.0, 0.3, 1.1};
  const std::vector<double> a = simulate_readout(m, 10007, 42);
  const std::vector<double> b = simulate_readout(m, 10007, 42);
  EXPECT_EQ(a, b);
  const std::vector<double> c = simulate_readout(m, 10007, 43);
  EXPECT_NE(a, c);
  // A prefix of a longer run is the shorter run.
  const std::vector<double> d = simulate_readout(m, 20000, 42);
  EXPECT_TRUE(std::equal(a.begin(), a.end(), d.begin()));
  EXPECT_THROW(simulate_readout(m, 0, 42), ConfigError);
}

TEST(Readout, CentralLimitAndNoiselessLimit) {
  MeasurementModel zero{0.0, 3.0, 2.0, 0.0};
  const std::size_t N = 100000;
  const std::vector<double> x = simulate_readout(zero, N, 7);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= N;
  EXPECT_LE(std::abs(mean), 5.0 * std::sqrt(2.0 / N));

  MeasurementModel sharp{0.0, 4.0, 0.0, 1.0};
  for (double v : simulate_readout(sharp, 1000, 1)) EXPECT_EQ(v, 4.0);
  const EstimatorRun run = linear_estimator(simulate_readout(sharp, 1000, 1), sharp);
  for (double a : run.estimates) EXPECT_EQ(a, 1.0);
}

TEST(Estimator, UnbiasedWithCorrectVariance) {
  for (double r : {0.0, 1.0}) {
    const GaussianProbeState st = mono_state(r);
    const MeasurementModel m = MeasurementModel::from_state(st, 2.5e-4);
    const std::size_t N = 1000000;
    const EstimatorRun run = linear_estimator(simulate_readout(m, N, 2024), m, 2024);
    const CrlbReport rep = crlb_amplitude(st);
    EXPECT_NEAR(run.analytic_variance, rep.crlb, 1e-12 * rep.crlb);
    EXPECT_TRUE(run.unbiased);
    EXPECT_TRUE(run.variance_consistent);
    EXPECT_LE(std::abs(run.variance - rep.crlb) / rep.crlb, 3.0 * std::sqrt(2.0 / N));
  }
  MeasurementModel flat{0.0, 0.0, 1.0, 0.0};
  EXPECT_THROW(linear_estimator({1.0, 2.0}, flat), ConfigError);
}

TEST(Estimator, NeverStatisticallyBelowBound) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    GaussianProbeState st;
    st.spectrum = spectra::gaussian_band(20.0 + 100.0 * u(rng), 0.02 + 0.2 * u(rng),
                                         10.0 + 1e3 * u(rng), 1.0, 5 + trial);
    st.squeeze_r = 1.5 * u(rng);
    st.reference = ReferenceKind::SqueezedVacuum;
    const MeasurementModel m = MeasurementModel::from_state(st, u(rng));
    const std::size_t N = 20000;
    const EstimatorRun run = linear_estimator(simulate_readout(m, N, trial), m);
    const double crlb = crlb_amplitude(st).crlb;
    EXPECT_GE(run.variance - crlb, -3.0 * crlb * std::sqrt(2.0 / N)) << trial;
    EXPECT_TRUE(run.unbiased) << trial;
  }
}

TEST(Fisher, ClosedFormIdentities) {
  for (double r : {0.0, 0.5, 1.0, 2.0}) {
    const GaussianProbeState st = mono_state(r, 50.0);
    const MeasurementModel m = MeasurementModel::from_state(st, 0.0);
    const double C = effective_constant_C(st.spectrum);
    EXPECT_NEAR(classical_fisher(m), 2.0 * C * std::exp(2.0 * r), 1e-10 * classical_fisher(m));
    const SaturationReport s = crb_saturation_check(st);
    EXPECT_TRUE(s.saturated) << r;
    EXPECT_NEAR(s.ratio, 1.0, 1e-9);
  }
  const SaturationReport inflated = crb_saturation_check(mono_state(0.7), 2.0);
  EXPECT_FALSE(inflated.saturated);
  EXPECT_NEAR(inflated.ratio, 2.0, 1e-12);
}

TEST(Fisher, HistogramEstimate) {
  const MeasurementModel m = MeasurementModel::from_state(mono_state(1.0, 100.0), 0.3);
  const std::vector<double> x = simulate_readout(m, 1000000, 77);
  const double F = classical_fisher(m);
  EXPECT_NEAR(histogram_fisher(x, m), F, 0.05 * F);
}
