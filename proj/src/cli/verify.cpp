#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "qcrb/cli/commands.hpp"
#include "qcrb/metric/families.hpp"
#include "qcrb/oracle/fock.hpp"
#include "qcrb/probe/correlator.hpp"

namespace qcrb::cli {

namespace {

using Suite = std::function<void(Report&, const Tolerances&)>;

double relative(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

Report bundled_bound(const std::string& name, const Tolerances& tol,
                     const std::function<void(Json&)>& edit = {}) {
  Json config = find_bundled(name).config;
  Json t = Json::object();
  for (const auto& [k, v] : tol.values()) t[k] = v;
  config["tolerances"] = t;
  if (edit) edit(config);
  return run_bound(parse_scenario(config));
}

GaussianProbeState state_of(ModeSpectrum s, double r) {
  GaussianProbeState st;
  st.spectrum = std::move(s);
  st.squeeze_r = r;
  st.reference = r > 0.0 ? ReferenceKind::SqueezedVacuum : ReferenceKind::VacuumCoherent;
  return st;
}

void trace_null(Report& rep, const Tolerances& tol) {
  rep.merge(bundled_bound("flrw-em-probe", tol), "flrw-em-probe");
  rep.merge(bundled_bound("desitter-em-probe", tol), "desitter-em-probe");
}

void coordinate_independence(Report& rep, const Tolerances& tol) {
  rep.merge(bundled_bound("schwarzschild-coordinate-check", tol), "conserved");
  rep.merge(bundled_bound("schwarzschild-coordinate-check", tol,
                          [](Json& c) { c["stress_energy"]["kind"] = "nonconserved_spherical_test"; }),
            "nonconserved");
}

void commutator(Report& rep, const Tolerances& tol) {
  const ModeSpectrum s = spectra::flat_band(50.0, 150.0, 1e6, 1.0, 100000);
  std::vector<cplx> rotated(s.alpha.size());
  for (std::size_t k = 0; k < s.alpha.size(); ++k) rotated[k] = cplx(0.0, 1.0) * s.alpha[k];
  const double C = effective_constant_C(s);
  const double K = commutator_constant(s.alpha, rotated, s.lattice, s.tau);
  Json& j = rep.section("commutator");
  j["modes"] = quantity(s.lattice.size(), "count");
  j["C"] = quantity(C, "action");
  j["commutator_constant"] = quantity(K, "action");
  rep.check("commutator_equals_C_1e5_modes", relative(K, C), tol.get("crlb.commutator"));
  const ModeSpectrum g = spectra::gaussian_band(80.0, 0.2, 300.0, 2.0, 41);
  const CrlbReport r = crlb_amplitude(state_of(g, 0.4));
  rep.check("commutator_residual_band", r.commutator_residual, tol.get("crlb.commutator"));
}

struct OracleCase {
  std::vector<cplx> alpha;
  std::vector<cplx> c;
  double r;
};

VecC to_vec(const std::vector<cplx>& v) {
  VecC out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

void wick_fock(Report& rep, const Tolerances& tol) {
  const std::vector<OracleCase> cases = {
      {{cplx(0.0)}, {cplx(1.0)}, 0.0},
      {{cplx(1.2, -0.4)}, {cplx(1.0)}, 0.0},
      {{cplx(0.0)}, {cplx(0.0, 1.0)}, 0.8},
      {{cplx(2.0)}, {cplx(1.0)}, 0.8},
      {{std::polar(2.0, 0.7)}, {std::polar(1.0, -0.3)}, 0.5},
      {{cplx(0.5, 0.5), cplx(-1.0, 0.3)}, {cplx(1.0), cplx(0.0, 1.0)}, 0.8},
      {{cplx(1.4, 0.0), cplx(0.0, 1.4)}, {cplx(0.6, 0.2), cplx(-0.3, 0.7)}, 0.6},
      {{cplx(2.0, 0.0), cplx(0.0, 0.0)}, {cplx(1.0), cplx(1.0)}, 0.8},
  };
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst_linear = 0.0, worst_quadratic = 0.0;
  int max_cutoff = 0;
  for (const OracleCase& cs : cases) {
    const int n = static_cast<int>(cs.alpha.size());
    const VecC alpha = to_vec(cs.alpha);
    const VecC c = to_vec(cs.c).normalized();
    const oracle::PreparedState prep = oracle::prepare_displaced_squeezed(alpha, c, cs.r);
    max_cutoff = std::max(max_cutoff, prep.space.cutoff());
    const GaussianState g = GaussianState::displaced_squeezed(alpha, c, cs.r);
    for (int trial = 0; trial < 3; ++trial) {
      VecC u(n);
      MatC a(n, n);
      for (int i = 0; i < n; ++i) u[i] = cplx(normal(rng), normal(rng));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) a(i, k) = cplx(normal(rng), normal(rng));
      const MatC W = 0.5 * (a + a.adjoint());
      worst_linear = std::max(worst_linear, std::abs(g.linear_variance(u) -
                                                     oracle::variance(prep.space.linear(u), prep.psi)));
      worst_quadratic =
          std::max(worst_quadratic, std::abs(g.quadratic_variance(W) -
                                             oracle::variance(prep.space.quadratic(W, alpha), prep.psi)));
    }
  }

  // Probe-layer quadratures and remainder on two occupied modes.
  std::vector<Mode> modes(2);
  modes[0].k = Vec3(9.0, 0, 0);
  modes[0].omega = 9.0;
  modes[1].k = Vec3(11.0, 0, 0);
  modes[1].omega = 11.0;
  GaussianProbeState st;
  st.spectrum.lattice = ModeLattice(modes);
  st.spectrum.alpha = {cplx(1.1, 0.2), cplx(0.4, -0.9)};
  st.spectrum.tau = 0.7;
  st.squeeze_r = 0.7;
  st.reference = ReferenceKind::SqueezedVacuum;
  const EffectiveModeState m = st.moments();
  const VecC alpha = to_vec(m.mean());
  const oracle::PreparedState prep =
      oracle::prepare_displaced_squeezed(alpha, to_vec(m.coefficients()), st.squeeze_r);
  const QuadratureObservables q = quadrature_observables(st.spectrum, st.hbar);
  const auto [v1, v2] = quadrature_variances(st);
  const std::vector<double> w = remainder_weights(st.spectrum, st.hbar);
  MatC W = MatC::Zero(2, 2);
  W(0, 0) = w[0];
  W(1, 1) = w[1];
  const double probe_quadrature =
      std::max(std::abs(v1 - oracle::variance(prep.space.linear(to_vec(q.u1)), prep.psi)),
               std::abs(v2 - oracle::variance(prep.space.linear(to_vec(q.u2)), prep.psi)));
  const double probe_remainder =
      std::abs(reference_remainder_variance(st, RemainderModel::Lattice) -
               oracle::variance(prep.space.quadratic(W, alpha), prep.psi));

  Json& j = rep.section("wick_fock");
  j["cases"] = quantity(cases.size(), "count");
  j["largest_cutoff"] = quantity(max_cutoff, "photons per mode");
  const double t = tol.get("wick_fock.absolute");
  rep.check("linear_variance", worst_linear, t, "largest |Wick - Fock|");
  rep.check("quadratic_variance", worst_quadratic, t, "largest |Wick - Fock|");
  rep.check("probe_quadratures", probe_quadrature, t);
  rep.check("probe_remainder", probe_remainder, t);
}

void reductions(Report& rep, const Tolerances& tol) {
  rep.merge(bundled_bound("proper-time-reduction", tol), "proper-time");
  rep.merge(bundled_bound("unruh-component", tol), "component-diagonal");
  rep.merge(bundled_bound("unruh-component", tol,
                          [](Json& c) {
                            c["family"]["params"]["nu0"] = 1;
                            c["stress_energy"] = {{"kind", "dust"},
                                                  {"rho", 2.0},
                                                  {"velocity", {1.25, 0.75, 0.0, 0.0}}};
                          }),
            "component-off-diagonal");
}

void derivatives(Report& rep, const Tolerances& tol) {
  const std::vector<families::CatalogEntry> catalog = families::builtin_catalog();
  Json& j = rep.section("derivatives");
  std::map<std::string, int> seen;
  for (const auto& entry : catalog) {
    const DerivativeCheck c = check_parameter_derivative(entry.family, entry.sample_box, 100, 7,
                                                         tol.get("derivative.relative"));
    const int count = ++seen[entry.family.name()];
    const std::string name = entry.family.name() + (count > 1 ? "#" + std::to_string(count) : "");
    j[name] = quantity(c.max_relative_error, "1");
    rep.check(name, c.worst_ratio, 1.0, "|analytic - fd| / (rel |analytic| + floor)");
  }
}

void shot_noise(Report& rep, const Tolerances& tol) {
  const double omega = 2.0 * kPi * 10.0, tau = 1.0, nbar = 1e4;
  const double expected = 1.0 / (std::pow(omega * tau, 2) * nbar);
  const ModeSpectrum mono = spectra::monochromatic(omega, nbar, tau);
  const double base = crlb_amplitude(state_of(mono, 0.0)).crlb;
  Json& j = rep.section("shot_noise");
  j["crlb_coherent"] = quantity(base, "parameter^2");
  j["expected"] = quantity(expected, "parameter^2");
  rep.check("monochromatic_coherent", relative(base, expected), tol.get("crlb.shot_noise"),
            "1 / ((omega tau)^2 nbar)");
  for (double r : {0.5, 1.0, 2.0}) {
    const double b = crlb_amplitude(state_of(mono, r)).crlb;
    rep.check("squeezing_r" + std::to_string(r).substr(0, 3), relative(b / base, std::exp(-2.0 * r)),
              tol.get("crlb.squeezing"), "gain e^{-2r}");
  }
  const double omega0 = 2.0 * kPi * 10.0, frac = 0.1;
  const ModeSpectrum band = spectra::gaussian_band(omega0, frac, nbar, tau, 201);
  const ModeSpectrum fine = spectra::gaussian_band(omega0, frac, nbar, tau, 201 * 16);
  const double b = crlb_amplitude(state_of(band, 0.0)).crlb;
  const double bf = crlb_amplitude(state_of(fine, 0.0)).crlb;
  const double continuum = 1.0 / (tau * tau * nbar * (omega0 * omega0 + std::pow(frac * omega0, 2)));
  j["crlb_band"] = quantity(b, "parameter^2");
  j["crlb_band_refined"] = quantity(bf, "parameter^2");
  j["crlb_band_continuum"] = quantity(continuum, "parameter^2");
  rep.check("broadband_lattice_refinement", relative(b, bf), tol.get("crlb.broadband"));
  rep.check("broadband_continuum", relative(b, continuum), tol.get("crlb.broadband"),
            "1 / (tau^2 nbar (omega0^2 + sigma^2))");
}

void mean_field(Report& rep, const Tolerances& tol) {
  const ModeSpectrum s = spectra::gaussian_band(60.0, 0.1, 100.0, 1.0, 21);
  Json& j = rep.section("mean_field");
  for (RemainderModel model : {RemainderModel::SingleMode, RemainderModel::Lattice}) {
    const std::string tag = model == RemainderModel::SingleMode ? "single_mode" : "lattice";
    std::vector<double> ratios;
    for (double lambda : {1.0, 10.0, 100.0}) {
      ratios.push_back(crlb_amplitude(state_of(s.scaled(lambda), 0.8), model).remainder_ratio);
    }
    const double slope = (std::log(ratios[2]) - std::log(ratios[0])) / std::log(100.0);
    j[tag + "_slope"] = quantity(slope, "1");
    rep.check(tag + "_slope", std::abs(slope + 2.0), tol.get("mean_field.slope"), "log-log slope -2");
    double worst = 0.0;
    for (int i = 1; i < 3; ++i) {
      const double lambda = std::pow(10.0, i);
      worst = std::max(worst, std::abs(ratios[i] * lambda * lambda / ratios[0] - 1.0));
    }
    rep.check(tag + "_inverse_square", worst, tol.get("mean_field.proportionality"),
              "remainder ratio lambda^2 / ratio(1) = 1");
  }
  rep.merge(bundled_bound("gw-monochromatic-coherent", tol), "gw-monochromatic-coherent");
}

void correlator(Report& rep, const Tolerances& tol) {
  Json& j = rep.section("correlator");
  for (const auto& [t, d] : {std::pair{0.0, 2.0}, std::pair{1.0, 3.0}}) {
    const CorrelatorCheck c = smeared_correlator_check(t, d, d / 50.0);
    const std::string name = "t" + std::to_string(t).substr(0, 3) + "_x" + std::to_string(d).substr(0, 3);
    j[name] = {{"numeric", quantity(c.numeric, "1 / length^2")},
               {"analytic", quantity(c.analytic, "1 / length^2")}};
    rep.check(name, c.relative_error, tol.get("correlator.relative"), "against 1 / (|x|^2 - t^2)");
  }
}

void saturation(Report& rep, const Tolerances& tol) {
  const ModeSpectrum mono = spectra::monochromatic(2.0 * kPi * 10.0, 1e4, 1.0);
  for (double r : {0.0, 0.5, 1.0, 2.0}) {
    const SaturationReport s = crb_saturation_check(state_of(mono, r));
    rep.check("fisher_r" + std::to_string(r).substr(0, 3), std::abs(s.ratio - 1.0),
              tol.get("fisher.saturation"));
  }
  Json& j = rep.section("monte_carlo");
  const std::size_t N = 1000000;
  for (double r : {0.0, 1.0}) {
    const GaussianProbeState st = state_of(mono, r);
    const MeasurementModel m = MeasurementModel::from_state(st, 1e-4);
    const EstimatorRun run = linear_estimator(simulate_readout(m, N, 2024), m, 2024);
    const double crlb = crlb_amplitude(st).crlb;
    const std::string tag = "r" + std::to_string(r).substr(0, 3);
    j[tag] = {{"variance", quantity(run.variance, "parameter^2")}, {"crlb", quantity(crlb, "parameter^2")}};
    rep.check("variance_" + tag, relative(run.variance, crlb),
              tol.get("estimator.variance_sigmas") * std::sqrt(2.0 / static_cast<double>(N)));
    rep.check("unbiased_" + tag, std::abs(run.mean - 1e-4) / run.standard_error,
              tol.get("estimator.bias_sigmas"));
  }
}

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> list = {
      {"trace-null", trace_null},
      {"coordinate-independence", coordinate_independence},
      {"commutator", commutator},
      {"wick-fock", wick_fock},
      {"reductions", reductions},
      {"derivatives", derivatives},
      {"shot-noise", shot_noise},
      {"mean-field", mean_field},
      {"correlator", correlator},
      {"saturation", saturation},
  };
  return list;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out{"paper-identities"};
    for (const auto& [name, suite] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

Report run_verify(const std::string& suite, const Tolerances& tolerances) {
  Report rep("verify " + suite);
  if (suite == "paper-identities") {
    for (const auto& [name, run] : registry()) {
      Report part("verify " + name);
      run(part, tolerances);
      rep.merge(part, name);
    }
    return rep;
  }
  for (const auto& [name, run] : registry()) {
    if (name == suite) {
      run(rep, tolerances);
      return rep;
    }
  }
  std::string names;
  for (const std::string& n : verify_suites()) names += (names.empty() ? "" : ", ") + n;
  throw ConfigError("suite", "unknown suite '" + suite + "' (available: " + names + ")");
}

}  // namespace qcrb::cli
