#include "qcrb/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "qcrb/generator/coordinate_check.hpp"
#include "qcrb/generator/generator.hpp"

namespace qcrb::cli {

namespace {

constexpr const char* kAction = "action / parameter";
constexpr const char* kBound = "parameter^2";

template <typename F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw StageError(name, "domain", e.what());
  } catch (const NumericalError& e) {
    throw StageError(name, "numerical", e.what());
  } catch (const ConfigError& e) {
    throw StageError(name, "config", e.what());
  }
}

double relative(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

struct Family {
  std::optional<LocalizedFamily> localized;
  const MetricFamily* plain = nullptr;

  const MetricFamily& active() const { return localized ? localized->family() : *plain; }
};

Family metric_stage(const Scenario& s) {
  return stage("metric", [&] {
    Family f;
    if (s.bump) {
      f.localized = localize(*s.family, *s.bump);
    } else {
      f.plain = &*s.family;
    }
    return f;
  });
}

Json generator_json(const GeneratorResult& g) {
  Json j = Json::object();
  j["P_total"] = quantity(g.P_total, kAction);
  j["P_K"] = quantity(g.P_K, kAction);
  j["P_shell"] = quantity(g.P_shell, kAction);
  j["P_coarse"] = quantity(g.P_coarse, kAction);
  j["quadrature_error_estimate"] = quantity(g.quadrature_error_estimate, kAction);
  j["converged"] = g.converged;
  j["support_clipped"] = g.support_clipped;
  return j;
}

Json crlb_json(const CrlbReport& r) {
  Json j = Json::object();
  j["C"] = quantity(r.C, "action");
  j["var_X1"] = quantity(r.var_X1, "action^2");
  j["var_X2"] = quantity(r.var_X2, "action^2");
  j["crlb"] = quantity(r.crlb, kBound);
  j["crlb_minimum_uncertainty"] = quantity(r.crlb_minimum_uncertainty, kBound);
  j["crlb_with_remainder"] = quantity(r.crlb_with_remainder, kBound);
  j["shot_noise"] = quantity(r.shot_noise, kBound);
  j["remainder_variance"] = quantity(r.remainder_variance, "action^2");
  j["remainder_ratio"] = quantity(r.remainder_ratio, "1");
  j["heisenberg_ratio"] = quantity(r.heisenberg_ratio, "1");
  j["commutator_residual"] = quantity(r.commutator_residual, "1");
  j["dc_excluded_modes"] = quantity(r.dc_excluded, "count");
  j["warnings"] = r.warnings;
  return j;
}

/// Checks shared by every amplitude bound: pure-state saturation of the
/// uncertainty relation and the closed forms for coherent and squeezed references.
void crlb_checks(Report& rep, const GaussianProbeState& st, const CrlbReport& r,
                 const Tolerances& tol) {
  rep.check("heisenberg_saturated", std::abs(r.heisenberg_ratio - 1.0), tol.get("crlb.heisenberg"),
            "var X1 var X2 / (hbar C / 2)^2 = 1");
  rep.check("commutator_equals_C", r.commutator_residual, tol.get("crlb.commutator"),
            "[X1, X2] = i hbar C");
  rep.check("minimum_uncertainty_form", relative(r.crlb_minimum_uncertainty, r.crlb),
            tol.get("crlb.heisenberg"));
  if (st.squeeze_r == 0.0) {
    rep.check("shot_noise", relative(r.crlb, r.shot_noise), tol.get("crlb.shot_noise"),
              "crlb = hbar / 2C");
  } else {
    rep.check("squeezing_gain", relative(r.crlb, r.shot_noise * std::exp(-2.0 * st.squeeze_r)),
              tol.get("crlb.squeezing"), "crlb = e^{-2r} hbar / 2C");
  }
}

Report amplitude(const Scenario& s) {
  Report rep("bound");
  const Family fam = metric_stage(s);
  const GeneratorResult g = stage("generator", [&] {
    return fam.localized ? integrate_generator(*s.stress, *fam.localized, *s.region)
                         : integrate_generator(*s.stress, *fam.plain, *s.region);
  });
  rep.section("generator") = generator_json(g);

  const CrlbReport r = stage("probe", [&] { return crlb_amplitude(*s.probe, s.remainder); });
  Json& probe = rep.section("probe");
  probe = crlb_json(r);
  probe["mean_photon_number"] = quantity(s.probe->spectrum.mean_photon_number(), "1");
  probe["modes"] = quantity(s.probe->spectrum.lattice.size(), "count");
  for (const std::string& w : r.warnings) rep.note(w);
  if (!r.defined) {
    rep.check("effective_constant_positive", 1.0, 0.0, "C = 0: bound undefined");
    return rep;
  }
  crlb_checks(rep, *s.probe, r, s.tolerances);

  // <X1> = tau hbar sum omega |alpha|^2 against twice the mean-field generator.
  const ModeSpectrum& sp = s.probe->spectrum;
  double x1 = 0.0;
  for (std::size_t k = 0; k < sp.lattice.size(); ++k) {
    x1 += sp.tau * s.hbar * sp.lattice[k].omega * std::norm(sp.alpha[k]);
  }
  probe["mean_X1"] = quantity(x1, "action");
  if (s.stress_kind == "probe_plane_wave" && s.family->name() == "gw_plane_wave" && !s.bump &&
      sp.lattice.size() == 1) {
    rep.check("mean_field_generator", relative(2.0 * g.P_total, x1), s.tolerances.get("mean_field.relative"),
              "<X1> = 2 <P>");
  }
  if (s.refined_spectrum) {
    const CrlbReport refined = stage("probe", [&] {
      GaussianProbeState st = *s.probe;
      st.spectrum = s.refined_spectrum(8);
      return crlb_amplitude(st, s.remainder);
    });
    probe["crlb_refined_lattice"] = quantity(refined.crlb, kBound);
    rep.check("lattice_refinement", relative(r.crlb, refined.crlb), s.tolerances.get("crlb.broadband"),
              "8x finer band lattice");
  }
  return rep;
}

Report trace_null(const Scenario& s) {
  Report rep("bound");
  const Family fam = metric_stage(s);
  const MetricFamily& f = fam.active();
  double worst = 0.0, max_density = 0.0, max_scale = 0.0;
  std::size_t points = 0;
  stage("generator", [&] {
    std::array<AxisNodes, 4> nodes;
    for (int a = 0; a < 4; ++a) nodes[a] = axis_nodes(*s.region, a);
    Vec4 x;
    for (double x0 : nodes[0].x)
      for (double x1 : nodes[1].x)
        for (double x2 : nodes[2].x)
          for (double x3 : nodes[3].x) {
            x << x0, x1, x2, x3;
            const Mat4 t = s.stress->at(x);
            const double scale = 0.5 * std::sqrt(std::abs(f.fiducial(x).determinant())) *
                                 t.cwiseProduct(f.parameter_derivative(x)).cwiseAbs().sum();
            const double d = std::abs(generator_density(*s.stress, f, x));
            max_density = std::max(max_density, d);
            max_scale = std::max(max_scale, scale);
            if (scale > 0.0) worst = std::max(worst, d / scale);
            ++points;
          }
    return 0;
  });
  const GeneratorResult g = stage("generator", [&] {
    return fam.localized ? integrate_generator(*s.stress, *fam.localized, *s.region)
                         : integrate_generator(*s.stress, *fam.plain, *s.region);
  });
  Json& tn = rep.section("trace_null");
  tn["grid_points"] = quantity(points, "count");
  tn["max_abs_density"] = quantity(max_density, "action / (parameter volume)");
  tn["max_density_scale"] = quantity(max_scale, "action / (parameter volume)");
  tn["max_density_ratio"] = quantity(worst, "1");
  rep.section("generator") = generator_json(g);
  const Check& c = rep.check("trace_null_density", worst, s.tolerances.get("trace_null.relative"),
                             "|density| / (1/2 sqrt|g| sum |T dg|) at every grid point");
  Json& bound = rep.section("bound");
  if (c.passed) {
    bound["crlb"] = quantity(std::numeric_limits<double>::infinity(), kBound);
    bound["status"] = "unbounded: the generator vanishes identically for a traceless probe";
  } else {
    bound["status"] = "trace-null diagnostic failed";
  }
  return rep;
}

Report coordinate(const Scenario& s) {
  Report rep("bound");
  CoordinateCheckOptions opts = s.coordinate_options;
  opts.conservation_tolerance = s.tolerances.get("coordinate.conservation");
  const StressEnergyField T = s.stress ? *s.stress : conserved_spherical_test_tensor(s.test_region);
  const CoordinateCheckReport r =
      stage("generator", [&] { return coordinate_independence_check(T, s.test_region, opts); });
  Json& j = rep.section("coordinate_check");
  j["resolution"] = quantity(opts.resolution, "panels per axis");
  j["P_schwarzschild"] = quantity(r.P_schwarzschild, kAction);
  j["P_isotropic"] = quantity(r.P_isotropic, kAction);
  j["difference"] = quantity(r.difference(), kAction);
  j["coarse_difference"] = quantity(r.coarse_difference, kAction);
  j["quadrature_error"] = quantity(r.quadrature_error, kAction);
  j["angular_integral"] = quantity(r.angular_integral, kAction);
  j["angular_integral_direct"] = quantity(r.angular_integral_direct, kAction);
  j["angular_quadrature_error"] = quantity(r.angular_quadrature_error, kAction);
  j["boundary_term"] = quantity(r.boundary_term, kAction);
  j["divergence_residual"] = quantity(r.divergence_residual, "1");
  j["conserved"] = r.conserved;
  const double diff = std::abs(r.difference());
  if (r.conserved) {
    rep.check("difference_within_quadrature_error", diff, r.quadrature_error, "|P_I - P_S|");
    const double ratio = diff > 0.0 ? r.coarse_difference / diff : std::numeric_limits<double>::infinity();
    j["refinement_ratio"] = quantity(ratio, "1");
    rep.check("refinement_reduces_difference", s.tolerances.get("coordinate.refinement_ratio") / ratio,
              1.0, "required / observed coarse-to-fine ratio");
  } else {
    rep.check("difference_matches_angular_integral", std::abs(r.difference() - r.angular_integral),
              r.quadrature_error + r.angular_quadrature_error);
    rep.check("angular_routes_agree", std::abs(r.angular_integral - r.angular_integral_direct),
              r.angular_quadrature_error, "divergence route vs direct");
  }
  return rep;
}

Report proper_time(const Scenario& s) {
  Report rep("bound");
  const ProperTimeReduction r = stage("generator", [&] {
    return proper_time_reduction(s.lapse_profile, *s.region, s.energy_variance, s.hbar);
  });
  Json& j = rep.section("proper_time");
  j["kappa"] = quantity(r.kappa, "time");
  j["lapse_integral"] = quantity(r.lapse_integral, "time");
  j["energy_variance"] = quantity(s.energy_variance, "energy^2");
  j["crlb_s"] = quantity(r.crlb_s, kBound);
  j["crlb_tau"] = quantity(r.crlb_tau, "time^2");
  j["product"] = quantity(r.product, "action^2");
  j["expected"] = quantity(r.expected, "action^2");
  const double tol = s.tolerances.get("reduction.relative");
  rep.check("generator_is_half_lapse_integral", relative(r.kappa, 0.5 * r.lapse_integral), tol);
  rep.check("time_energy_relation", relative(r.product, r.expected), tol, "crlb_tau <dH^2> = hbar^2 / 4");
  return rep;
}

Report component(const Scenario& s) {
  Report rep("bound");
  const ComponentReduction r = stage("generator", [&] {
    return component_reduction(s.component_mu, s.component_nu, *s.stress, *s.region,
                               s.component_variance, s.hbar);
  });
  Json& j = rep.section("component");
  j["mu0"] = quantity(r.mu0, "index");
  j["nu0"] = quantity(r.nu0, "index");
  j["multiplicity"] = quantity(r.multiplicity, "1");
  j["crlb"] = quantity(r.crlb, kBound);
  j["product"] = quantity(r.product, "action^2");
  j["expected"] = quantity(r.expected, "action^2");
  const double tol = s.tolerances.get("reduction.relative");
  rep.check("multiplicity", relative(r.multiplicity, r.mu0 == r.nu0 ? 0.5 : 1.0), tol);
  rep.check("uncertainty_relation", relative(r.product, r.expected), tol,
            r.mu0 == r.nu0 ? "product = hbar^2" : "product = hbar^2 / 4");
  return rep;
}

Report with_header(Report rep, const Scenario& s) {
  rep.set_scenario(s.source, s.hbar);
  Json& a = rep.section("analysis");
  a["kind"] = s.analysis_name;
  a["scenario"] = s.name;
  return rep;
}

}  // namespace

StageError::StageError(std::string stage, std::string kind, const std::string& message)
    : std::runtime_error("stage '" + stage + "' (" + kind + " error): " + message),
      stage_(std::move(stage)),
      kind_(std::move(kind)) {}

Report run_bound(const Scenario& s) {
  switch (s.analysis) {
    case AnalysisKind::Amplitude:
      return with_header(amplitude(s), s);
    case AnalysisKind::TraceNull:
      return with_header(trace_null(s), s);
    case AnalysisKind::CoordinateCheck:
      return with_header(coordinate(s), s);
    case AnalysisKind::ProperTime:
      return with_header(proper_time(s), s);
    case AnalysisKind::Component:
      return with_header(component(s), s);
  }
  throw ConfigError("analysis.kind", "unhandled analysis");
}

Report run_simulate(const Scenario& s) {
  if (!s.simulation) throw ConfigError("simulation", "required for simulate");
  if (!s.probe) throw ConfigError("probe", "required for simulate");
  const SimulationSpec& sim = *s.simulation;
  Report rep("simulate");
  rep.set_scenario(s.source, s.hbar);
  rep.set_seed(sim.seed);

  const CrlbReport bound = stage("probe", [&] { return crlb_amplitude(*s.probe, s.remainder); });
  if (!bound.defined) throw StageError("probe", "config", "C = 0: no information about the amplitude");
  const MeasurementModel model =
      stage("estimator", [&] { return MeasurementModel::from_state(*s.probe, sim.A_true); });
  const std::vector<double> samples =
      stage("estimator", [&] { return simulate_readout(model, sim.N, sim.seed); });
  const EstimatorRun run = stage("estimator", [&] { return linear_estimator(samples, model, sim.seed); });
  const SaturationReport sat = stage("estimator", [&] { return crb_saturation_check(*s.probe); });

  if (!sim.dump_path.empty()) {
    std::FILE* f = std::fopen(sim.dump_path.c_str(), "w");
    if (!f) throw StageError("output", "config", "cannot write " + sim.dump_path);
    std::fprintf(f, "# readout estimate\n");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::fprintf(f, "%.17g %.17g\n", samples[i], run.estimates[i]);
    }
    std::fclose(f);
  }

  Json& e = rep.section("estimator");
  e["N"] = quantity(run.N, "count");
  e["A_true"] = quantity(sim.A_true, "parameter");
  e["mean"] = quantity(run.mean, "parameter");
  e["variance"] = quantity(run.variance, kBound);
  e["analytic_variance"] = quantity(run.analytic_variance, kBound);
  e["standard_error"] = quantity(run.standard_error, "parameter");
  e["variance_relative_deviation"] = quantity(run.variance_relative_deviation, "1");
  Json& b = rep.section("bound");
  b["crlb"] = quantity(bound.crlb, kBound);
  b["shot_noise"] = quantity(bound.shot_noise, kBound);
  b["classical_fisher_inverse"] = quantity(sat.classical_fisher_inverse, kBound);
  b["saturation_ratio"] = quantity(sat.ratio, "1");
  b["variance_over_crlb"] = quantity(run.variance / bound.crlb, "1");

  const Tolerances& tol = s.tolerances;
  const double n = static_cast<double>(run.N);
  rep.check("estimator_unbiased", std::abs(run.mean - sim.A_true) / run.standard_error,
            tol.get("estimator.bias_sigmas"), "|mean - A_true| in standard errors");
  if (run.N > 1) {
    rep.check("variance_matches_crlb", relative(run.variance, bound.crlb),
              tol.get("estimator.variance_sigmas") * std::sqrt(2.0 / n), "k sqrt(2/N) relative");
  }
  rep.check("crb_saturated", std::abs(sat.ratio - 1.0), tol.get("fisher.saturation"),
            "1/F against hbar^2 / (4 var X1)");
  if (run.N >= 100000) {
    const double F = classical_fisher(model);
    const double Fh = histogram_fisher(samples, model);
    b["histogram_fisher"] = quantity(Fh, "1 / parameter^2");
    rep.check("histogram_fisher", relative(Fh, F), tol.get("fisher.histogram"));
  }
  return rep;
}

Report list_scenarios() {
  Report rep("list-scenarios");
  Json& list = rep.section("scenarios");
  for (const BundledScenario& b : bundled_scenarios()) list[b.name] = b.description;
  Json& suites = rep.section("verify_suites");
  suites = Json::array();
  for (const std::string& v : verify_suites()) suites.push_back(v);
  const Tolerances defaults = Tolerances::defaults();
  Json& tol = rep.section("default_tolerances");
  for (const auto& [k, v] : defaults.values()) tol[k] = quantity(v, "as compared");
  return rep;
}

}  // namespace qcrb::cli
