#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "qcrb/probe/correlator.hpp"
#include "qcrb/probe/probe.hpp"

using namespace qcrb;

namespace {

constexpr double kOmegaTau = 2.0 * kPi * 10.0;

ModeSpectrum lattice_spectrum(const std::vector<double>& omegas, const std::vector<cplx>& alpha,
                              double tau = 1.0) {
  std::vector<Mode> modes;
  for (double w : omegas) {
    Mode m;
    m.k = Vec3(w, 0.0, 0.0);
    m.omega = w;
    modes.push_back(m);
  }
  ModeSpectrum s;
  s.lattice = ModeLattice(modes);
  s.alpha = alpha;
  s.tau = tau;
  return s;
}

ModeSpectrum random_spectrum(std::mt19937_64& rng, int modes) {
  std::uniform_real_distribution<double> w(7.0, 80.0);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> omegas;
  std::vector<cplx> alpha;
  for (int i = 0; i < modes; ++i) {
    omegas.push_back(w(rng));
    alpha.emplace_back(n(rng), n(rng));
  }
  return lattice_spectrum(omegas, alpha);
}

GaussianProbeState state_of(ModeSpectrum s, double r) {
  GaussianProbeState st;
  st.spectrum = std::move(s);
  st.squeeze_r = r;
  st.reference = r > 0.0 ? ReferenceKind::SqueezedVacuum : ReferenceKind::VacuumCoherent;
  return st;
}

}  // namespace

TEST(Spectrum, MonochromaticConstant) {
  const double nbar = 1e4, hbar = 0.7;
  const ModeSpectrum s = spectra::monochromatic(kOmegaTau, nbar, 1.0);
  const double C = effective_constant_C(s, hbar);
  EXPECT_NEAR(C, 0.5 * hbar * kOmegaTau * kOmegaTau * nbar, 1e-12 * C);
  EXPECT_NEAR(hbar / (2.0 * C), 1.0 / (kOmegaTau * kOmegaTau * nbar), 1e-20);
  EXPECT_EQ(s.dc_excluded, 0u);
  EXPECT_TRUE(s.warnings.empty());
}

TEST(Spectrum, TwoModesAddInQuadrature) {
  const double w = 9.0, nbar = 3.0, tau = 2.0;
  const ModeSpectrum s =
      lattice_spectrum({w, 2.0 * w}, {cplx(std::sqrt(nbar)), cplx(0.0, std::sqrt(nbar))}, tau);
  EXPECT_NEAR(effective_constant_C(s), 0.5 * tau * tau * nbar * 5.0 * w * w, 1e-11);
}

TEST(Spectrum, ZeroFieldAndEmptyCutoff) {
  const ModeSpectrum s = lattice_spectrum({10.0, 11.0}, {cplx(0.0), cplx(0.0)});
  EXPECT_EQ(effective_constant_C(s), 0.0);
  const CrlbReport rep = crlb_amplitude(state_of(s, 0.0));
  EXPECT_FALSE(rep.defined);
  EXPECT_TRUE(std::isinf(rep.crlb));
  EXPECT_FALSE(rep.warnings.empty());
  EXPECT_THROW(effective_mode_coefficients(s), ConfigError);
  EXPECT_THROW(spectra::monochromatic(1.0, 1.0, 1.0), ConfigError);
}

TEST(Spectrum, DcCutoffAndParaxialWarning) {
  std::istringstream table(
      "# kx ky kz re im\n"
      "1.0 0 0 1 0\n"
      "20.0 0 0 2 0\n"
      "0 30.0 0 0.5 0\n");
  const ModeSpectrum s = spectra::tabulated(table, 1.0);
  EXPECT_EQ(s.lattice.size(), 2u);
  EXPECT_EQ(s.dc_excluded, 1u);
  ASSERT_EQ(s.warnings.size(), 1u);
  std::istringstream bad("1 2 3\n");
  EXPECT_THROW(spectra::tabulated(bad, 1.0), ConfigError);
}

TEST(Spectrum, ConjugateSpectrum) {
  const ModeSpectrum s = lattice_spectrum({10.0, 12.0}, {cplx(1.0), cplx(0.0, 1.0)});
  const ModeSpectrum c = conjugate_spectrum(s);
  EXPECT_EQ(c.alpha[0], cplx(0.0, 1.0));
  EXPECT_EQ(c.alpha[1], cplx(-1.0, 0.0));
  const ModeSpectrum cc = conjugate_spectrum(c);
  EXPECT_EQ(cc.alpha[0], -s.alpha[0]);
  EXPECT_EQ(cc.alpha[1], -s.alpha[1]);
  EXPECT_TRUE(c.lattice.same_as(s.lattice));
  EXPECT_EQ(c.tau, s.tau);
}

TEST(Spectrum, CommutatorConstant) {
  std::mt19937_64 rng(3);
  const ModeSpectrum s = random_spectrum(rng, 50);
  const double C = effective_constant_C(s, 1.3);
  const ModeSpectrum i_s = conjugate_spectrum(s);
  EXPECT_EQ(commutator_constant(s.alpha, i_s.alpha, s.lattice, s.tau, 1.3), C);
  EXPECT_EQ(commutator_constant(s.alpha, s.alpha, s.lattice, s.tau, 1.3), 0.0);
  for (double phi : {0.3, 1.2, 2.5, -0.8}) {
    std::vector<cplx> rotated;
    for (const cplx& a : s.alpha) rotated.push_back(std::polar(1.0, phi) * a);
    EXPECT_NEAR(commutator_constant(s.alpha, rotated, s.lattice, s.tau, 1.3), C * std::sin(phi),
                1e-12 * C);
  }
  const ModeSpectrum other = random_spectrum(rng, 49);
  EXPECT_THROW(commutator_constant(s.alpha, other.alpha, s.lattice, s.tau), ConfigError);
}

TEST(Spectrum, EffectiveModeCoefficients) {
  const ModeSpectrum one = spectra::monochromatic(kOmegaTau, 25.0, 1.0);
  EXPECT_NEAR(std::abs(effective_mode_coefficients(one)[0]), 1.0, 1e-15);
  const ModeSpectrum pair = lattice_spectrum({20.0, 20.0}, {cplx(2.0), cplx(0.0, 2.0)});
  for (const cplx& c : effective_mode_coefficients(pair)) {
    EXPECT_NEAR(std::abs(c), 1.0 / std::sqrt(2.0), 1e-15);
  }
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<cplx> c = effective_mode_coefficients(random_spectrum(rng, 40), 0.3);
    double norm = 0.0;
    for (const cplx& v : c) norm += std::norm(v);
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

TEST(Variances, CoherentAndSqueezed) {
  const double hbar = 1.7;
  const ModeSpectrum s = spectra::gaussian_band(40.0, 0.1, 500.0, 1.0, 31);
  const double C = effective_constant_C(s, hbar);
  for (double r : {0.0, 0.5, 1.0, 2.0}) {
    GaussianProbeState st = state_of(s, r);
    st.hbar = hbar;
    const auto [v1, v2] = quadrature_variances(st);
    EXPECT_NEAR(v1, 0.5 * hbar * C * std::exp(2.0 * r), 1e-12 * v1) << r;
    EXPECT_NEAR(v2, 0.5 * hbar * C * std::exp(-2.0 * r), 1e-12 * v2) << r;
    EXPECT_NEAR(v1 * v2, std::pow(0.5 * hbar * C, 2), 1e-12 * v1 * v2);
  }
}

TEST(Crlb, ShotNoiseSqueezingAndScaling) {
  const ModeSpectrum s = spectra::monochromatic(kOmegaTau, 1e4, 1.0);
  const CrlbReport coherent = crlb_amplitude(state_of(s, 0.0));
  const double shot = 1.0 / (kOmegaTau * kOmegaTau * 1e4);
  EXPECT_NEAR(coherent.crlb, shot, 1e-10 * shot);
  EXPECT_NEAR(coherent.crlb, 2.533e-8, 5e-12);
  EXPECT_NEAR(coherent.shot_noise, shot, 1e-10 * shot);
  EXPECT_NEAR(coherent.crlb * coherent.var_X1, 0.25, 1e-12);
  EXPECT_NEAR(coherent.crlb, coherent.var_X2 / (coherent.C * coherent.C), 1e-12 * shot);
  EXPECT_EQ(coherent.remainder_variance, 0.0);
  EXPECT_LE(coherent.commutator_residual, 1e-12);

  for (double r : {0.5, 1.0, 2.0}) {
    const CrlbReport sq = crlb_amplitude(state_of(s, r));
    EXPECT_NEAR(sq.crlb / coherent.crlb, std::exp(-2.0 * r), 1e-9 * std::exp(-2.0 * r));
    EXPECT_NEAR(sq.crlb, sq.crlb_minimum_uncertainty, 1e-10 * sq.crlb);
    EXPECT_NEAR(sq.heisenberg_ratio, 1.0, 1e-10);
    EXPECT_GE(sq.crlb * sq.var_X1, 0.25 * (1.0 - 1e-9));
  }

  const CrlbReport scaled = crlb_amplitude(state_of(s.scaled(3.0), 0.0));
  EXPECT_NEAR(scaled.C, 9.0 * coherent.C, 1e-12 * scaled.C);
  EXPECT_NEAR(scaled.crlb, coherent.crlb / 9.0, 1e-12 * coherent.crlb);
}

TEST(Crlb, BroadbandGeneralizedShotNoise) {
  // Continuum limit of sum (omega tau)^2 |alpha|^2 for a Gaussian power spectrum:
  // tau^2 nbar (omega0^2 + sigma^2).
  const double omega0 = 2.0 * kPi * 20.0, frac = 0.1, nbar = 1e3, tau = 1.0;
  const ModeSpectrum s = spectra::gaussian_band(omega0, frac, nbar, tau, 201);
  const double sigma = frac * omega0;
  const double continuum = 1.0 / (tau * tau * nbar * (omega0 * omega0 + sigma * sigma));
  const CrlbReport rep = crlb_amplitude(state_of(s, 0.0));
  EXPECT_NEAR(rep.crlb, continuum, 1e-3 * continuum);
  double direct = 0.0;
  for (std::size_t k = 0; k < s.lattice.size(); ++k) {
    direct += std::pow(s.lattice[k].omega * tau, 2) * std::norm(s.alpha[k]);
  }
  EXPECT_NEAR(rep.crlb, 1.0 / direct, 1e-12 / direct);
}

TEST(Remainder, VanishesForCoherentAndScalesInverselyWithMeanField) {
  const ModeSpectrum s = spectra::gaussian_band(60.0, 0.1, 100.0, 1.0, 21);
  EXPECT_EQ(reference_remainder_variance(state_of(s, 0.0)), 0.0);
  GaussianProbeState vac = state_of(s, 0.0);
  vac.reference = ReferenceKind::SqueezedVacuum;
  EXPECT_EQ(reference_remainder_variance(vac, RemainderModel::Lattice), 0.0);

  for (RemainderModel model : {RemainderModel::SingleMode, RemainderModel::Lattice}) {
    std::vector<double> lx, ly;
    for (double lambda : {1.0, 10.0, 100.0}) {
      const CrlbReport rep = crlb_amplitude(state_of(s.scaled(lambda), 0.8), model);
      EXPECT_GT(rep.remainder_variance, 0.0);
      lx.push_back(std::log(lambda));
      ly.push_back(std::log(rep.remainder_ratio));
    }
    const double slope = (ly[2] - ly[0]) / (lx[2] - lx[0]);
    EXPECT_NEAR(slope, -2.0, 0.1);
  }
}

TEST(Remainder, SingleModeModelOnOneMode) {
  // One mode: F = kappa da^+ da with kappa = tau hbar omega / 2, and the squeezed vacuum
  // has var(n) = 2 sinh^2 r cosh^2 r.
  const double w = 30.0, r = 0.6;
  const ModeSpectrum s = spectra::monochromatic(w, 4.0, 1.0);
  const double kappa = 0.5 * w;
  const double expected = kappa * kappa * 2.0 * std::pow(std::sinh(r) * std::cosh(r), 2);
  const GaussianProbeState st = state_of(s, r);
  EXPECT_NEAR(reference_remainder_variance(st, RemainderModel::SingleMode), expected,
              1e-12 * expected);
  EXPECT_NEAR(reference_remainder_variance(st, RemainderModel::Lattice), expected, 1e-12 * expected);
}

TEST(Probe, ValidationErrors) {
  const ModeSpectrum s = spectra::monochromatic(20.0, 1.0, 1.0);
  GaussianProbeState st = state_of(s, 0.0);
  st.squeeze_r = 0.5;
  EXPECT_THROW(st.validate(), ConfigError);
  st.reference = ReferenceKind::SqueezedVacuum;
  st.squeeze_r = -0.1;
  EXPECT_THROW(st.validate(), ConfigError);
  st.squeeze_r = 0.1;
  st.hbar = 0.0;
  EXPECT_THROW(st.validate(), ConfigError);
}

TEST(Probe, CommutatorIdentityOnLargeLattice) {
  std::mt19937_64 rng(99);
  const ModeSpectrum s = random_spectrum(rng, 100000);
  const auto t0 = std::chrono::steady_clock::now();
  const double C = effective_constant_C(s);
  const ModeSpectrum i_s = conjugate_spectrum(s);
  const double comm = commutator_constant(s.alpha, i_s.alpha, s.lattice, s.tau);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LE(std::abs(comm - C), 1e-12 * C);
  EXPECT_LT(seconds, 1.0);
}

TEST(Correlator, AnalyticValuesAndSmearedAgreement) {
  for (const auto& [t, d, expected] : {std::tuple{0.0, 2.0, 0.25}, std::tuple{1.0, 3.0, 0.125}}) {
    const CorrelatorCheck c = smeared_correlator_check(t, d, d / 50.0);
    EXPECT_DOUBLE_EQ(c.analytic, expected);
    EXPECT_LE(c.relative_error, 1e-2) << "t=" << t << " |x|=" << d;
  }
  EXPECT_THROW(smeared_correlator_check(1.0, 1.2, 0.1), DomainError);
}
