#include "qcrb/cli/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qcrb::cli {

namespace {

std::string type_name(const Json& j) { return j.type_name(); }

std::string join_keys(const std::map<std::string, double>& m) {
  std::string out;
  for (const auto& [k, v] : m) out += (out.empty() ? "" : ", ") + k;
  return out;
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  const std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return (std::filesystem::path(base_dir) / path).string();
}

CoordinateBox box_of(const Node& n) {
  n.allow_only({"lo", "hi"});
  CoordinateBox b;
  b.lo = n.vec4("lo");
  b.hi = n.vec4("hi");
  return b;
}

Vec3 vec3_of(const Node& n, const std::string& key) {
  const Json& j = n.json().at(key);
  if (!j.is_array() || j.size() != 3) throw ConfigError(n.path(key), "expected 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ConfigError(n.path(key), "expected 3 numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

std::function<double(double)> lapse_from(const Node& n) {
  const std::string kind = n.text("kind");
  if (kind == "constant") {
    n.allow_only({"kind", "value"});
    const double a = n.number("value");
    return [a](double) { return a; };
  }
  if (kind == "sinusoid") {
    n.allow_only({"kind", "mean", "amplitude", "omega"});
    const double m = n.number("mean"), a = n.number("amplitude"), w = n.number("omega");
    return [m, a, w](double t) { return m + a * std::sin(w * t); };
  }
  throw ConfigError(n.path("kind"), "unknown lapse profile '" + kind + "' (constant, sinusoid)");
}

std::function<double(double)> envelope_from(const Node& n) {
  const std::string kind = n.text("kind");
  if (kind == "none") return {};
  if (kind == "cosine") {
    n.allow_only({"kind", "wavenumber"});
    const double k = n.number("wavenumber");
    return [k](double u) { return std::cos(k * u); };
  }
  if (kind == "gaussian") {
    n.allow_only({"kind", "width"});
    const double w = n.number("width");
    if (!(w > 0.0)) throw ConfigError(n.path("width"), "must be positive");
    return [w](double u) { return std::exp(-0.5 * u * u / (w * w)); };
  }
  throw ConfigError(n.path("kind"), "unknown envelope '" + kind + "' (none, cosine, gaussian)");
}

TensorGrid read_grid(const std::string& path, const std::string& key) {
  std::ifstream in(path);
  if (!in) throw ConfigError(key, "cannot open grid file " + path);
  return TensorGrid::read(in);
}

void build_family(Scenario& s, const Node& root, const std::string& base_dir) {
  const Node f = root.child("family");
  f.allow_only({"name", "params"});
  const std::string name = f.text("name");
  const Json empty = Json::object();
  const Node p = f.has("params") ? f.child("params") : Node(empty, f.path("params"));
  if (name == "gw_plane_wave") {
    p.allow_only({"amplitude0", "envelope"});
    std::function<double(double)> env;
    if (p.has("envelope")) env = envelope_from(p.child("envelope"));
    s.family = families::gw_plane_wave(p.number("amplitude0", 0.0), env);
  } else if (name == "component_perturbation") {
    p.allow_only({"mu0", "nu0", "theta0"});
    s.component_mu = static_cast<int>(p.integer("mu0"));
    s.component_nu = static_cast<int>(p.integer("nu0"));
    for (int v : {s.component_mu, s.component_nu}) {
      if (v < 0 || v > 3) throw ConfigError(p.path("mu0"), "indices must lie in 0..3");
    }
    s.family = families::component_perturbation(s.component_mu, s.component_nu,
                                                p.number("theta0", 0.0));
  } else if (name == "uniform_lapse") {
    p.allow_only({"s0", "lapse"});
    s.lapse_profile = lapse_from(p.child("lapse"));
    s.family = families::uniform_lapse(s.lapse_profile, p.number("s0", 0.0));
  } else if (name == "schwarzschild") {
    p.allow_only({"m0"});
    s.family = families::schwarzschild(p.number("m0", 0.0));
  } else if (name == "isotropic") {
    p.allow_only({"m0"});
    s.family = families::isotropic(p.number("m0", 0.0));
  } else if (name == "flrw_closed_dust") {
    p.allow_only({"a_max"});
    s.family = families::flrw_closed_dust(p.number("a_max"));
  } else if (name == "de_sitter") {
    p.allow_only({"lambda"});
    s.family = families::de_sitter(p.number("lambda"));
  } else if (name == "tabulated") {
    p.allow_only({"metric_grid", "derivative_grid", "theta0"});
    s.family = families::tabulated(
        read_grid(resolve(base_dir, p.text("metric_grid")), p.path("metric_grid")),
        read_grid(resolve(base_dir, p.text("derivative_grid")), p.path("derivative_grid")),
        p.number("theta0", 0.0));
  } else {
    throw ConfigError(f.path("name"),
                      "unknown family '" + name +
                          "' (gw_plane_wave, component_perturbation, uniform_lapse, "
                          "schwarzschild, isotropic, flrw_closed_dust, de_sitter, tabulated)");
  }
}

void build_bump(Scenario& s, const Node& root) {
  if (!root.has("bump")) return;
  const Node b = root.child("bump");
  b.allow_only({"plateau", "support", "profile", "order", "restricted"});
  const std::string profile = b.text("profile", "smoothstep");
  ProfileKind kind;
  if (profile == "smoothstep") {
    kind = ProfileKind::Smoothstep;
  } else if (profile == "mollifier") {
    kind = ProfileKind::Mollifier;
  } else {
    throw ConfigError(b.path("profile"), "expected smoothstep or mollifier");
  }
  std::array<bool, 4> restricted{true, true, true, true};
  if (b.has("restricted")) {
    const Json& r = b.json().at("restricted");
    if (!r.is_array() || r.size() != 4) throw ConfigError(b.path("restricted"), "expected 4 flags");
    for (int a = 0; a < 4; ++a) {
      if (!r[a].is_boolean()) throw ConfigError(b.path("restricted"), "expected 4 flags");
      restricted[a] = r[a].get<bool>();
    }
  }
  s.bump.emplace(box_of(b.child("plateau")), box_of(b.child("support")), kind,
                 static_cast<int>(b.integer("order", 3)), restricted);
}

void build_region(Scenario& s, const Node& root) {
  if (!root.has("region")) return;
  const Node r = root.child("region");
  r.allow_only({"lo", "hi", "rule", "resolution", "points_per_panel"});
  RegionSpec region;
  region.box.lo = r.vec4("lo");
  region.box.hi = r.vec4("hi");
  const std::string rule = r.text("rule", "trapezoid");
  if (rule == "trapezoid") {
    region.rule = QuadratureRule::Trapezoid;
  } else if (rule == "gauss-legendre") {
    region.rule = QuadratureRule::GaussLegendre;
  } else {
    throw ConfigError(r.path("rule"), "expected trapezoid or gauss-legendre");
  }
  region.resolution = r.resolution("resolution", {32, 32, 32, 32});
  region.points_per_panel = static_cast<int>(r.integer("points_per_panel", 1));
  region.validate();
  s.region = region;
}

ModeSpectrum spectrum_from(const Node& n, double tau, double dc, const std::string& base_dir) {
  const std::string kind = n.text("kind");
  if (kind == "monochromatic") {
    n.allow_only({"kind", "omega", "nbar"});
    return spectra::monochromatic(n.number("omega"), n.number("nbar"), tau, dc);
  }
  if (kind == "gaussian_band") {
    n.allow_only({"kind", "omega0", "fractional_width", "nbar", "modes", "n_sigma"});
    return spectra::gaussian_band(n.number("omega0"), n.number("fractional_width"),
                                  n.number("nbar"), tau, static_cast<int>(n.integer("modes")),
                                  n.number("n_sigma", 6.0), dc);
  }
  if (kind == "flat_band") {
    n.allow_only({"kind", "omega_lo", "omega_hi", "nbar", "modes"});
    return spectra::flat_band(n.number("omega_lo"), n.number("omega_hi"), n.number("nbar"), tau,
                              static_cast<int>(n.integer("modes")), dc);
  }
  if (kind == "tabulated") {
    n.allow_only({"kind", "path"});
    const std::string path = resolve(base_dir, n.text("path"));
    std::ifstream in(path);
    if (!in) throw ConfigError(n.path("path"), "cannot open spectrum file " + path);
    return spectra::tabulated(in, tau, dc);
  }
  throw ConfigError(n.path("kind"), "unknown spectrum '" + kind +
                                        "' (monochromatic, gaussian_band, flat_band, tabulated)");
}

void build_probe(Scenario& s, const Node& root, const std::string& base_dir) {
  if (!root.has("probe")) return;
  const Node p = root.child("probe");
  p.allow_only({"spectrum", "tau", "squeeze_r", "reference", "dc_multiplier", "remainder_model"});
  GaussianProbeState st;
  st.hbar = s.hbar;
  st.squeeze_r = p.number("squeeze_r", 0.0);
  const std::string ref = p.text("reference", st.squeeze_r > 0.0 ? "squeezed-vacuum" : "coherent");
  if (ref == "coherent") {
    st.reference = ReferenceKind::VacuumCoherent;
  } else if (ref == "squeezed-vacuum") {
    st.reference = ReferenceKind::SqueezedVacuum;
  } else {
    throw ConfigError(p.path("reference"), "expected coherent or squeezed-vacuum");
  }
  const std::string model = p.text("remainder_model", "single-mode");
  if (model == "single-mode") {
    s.remainder = RemainderModel::SingleMode;
  } else if (model == "lattice") {
    s.remainder = RemainderModel::Lattice;
  } else {
    throw ConfigError(p.path("remainder_model"), "expected single-mode or lattice");
  }
  const double tau = p.number("tau"), dc = p.number("dc_multiplier", 1.0);
  st.spectrum = spectrum_from(p.child("spectrum"), tau, dc, base_dir);
  const Json band = p.json().at("spectrum");
  const std::string band_kind = band.value("kind", "");
  if (band_kind == "gaussian_band" || band_kind == "flat_band") {
    s.refined_spectrum = [band, tau, dc, base_dir](int factor) {
      Json refined = band;
      refined["modes"] = factor * band.at("modes").get<int>();
      return spectrum_from(Node(refined, "probe.spectrum"), tau, dc, base_dir);
    };
  }
  st.validate();
  s.probe = st;
}

// E_y = B_z = sum_k E_k cos(omega_k (x - t) + arg alpha_k) with E_k^2 = 8 pi hbar omega_k |alpha_k|^2 / V,
// so that the field energy per mode over the spatial box V is hbar omega_k |alpha_k|^2.
StressEnergyField probe_wave(const GaussianProbeState& st, const RegionSpec& region,
                             const std::string& key) {
  double volume = 1.0;
  for (int a = 1; a < 4; ++a) volume *= region.box.hi[a] - region.box.lo[a];
  const double duration = region.box.hi[0] - region.box.lo[0];
  if (std::abs(duration - st.spectrum.tau) > 1e-12 * st.spectrum.tau) {
    throw ConfigError(key, "probe_plane_wave needs the region duration to equal probe.tau");
  }
  std::vector<double> amp, omega, phase;
  for (std::size_t k = 0; k < st.spectrum.lattice.size(); ++k) {
    const cplx a = st.spectrum.alpha[k];
    if (a == cplx(0.0)) continue;
    const double w = st.spectrum.lattice[k].omega;
    amp.push_back(std::sqrt(8.0 * kPi * st.hbar * w * std::norm(a) / volume));
    omega.push_back(w);
    phase.push_back(std::arg(a));
  }
  return StressEnergyField::from_em(
      plane_wave_along_x([amp, omega, phase](double t, double x) {
        double e = 0.0;
        for (std::size_t k = 0; k < amp.size(); ++k) e += amp[k] * std::cos(omega[k] * (x - t) + phase[k]);
        return e;
      }),
      "probe-plane-wave");
}

void build_stress(Scenario& s, const Node& root, const std::string& base_dir) {
  if (!root.has("stress_energy")) return;
  const Node n = root.child("stress_energy");
  const std::string kind = n.text("kind");
  s.stress_kind = kind;
  if (kind == "probe_plane_wave") {
    n.allow_only({"kind"});
    if (!s.probe || !s.region) {
      throw ConfigError(n.path("kind"), "probe_plane_wave needs probe and region sections");
    }
    s.stress = probe_wave(*s.probe, *s.region, n.path("kind"));
  } else if (kind == "em_uniform") {
    n.allow_only({"kind", "E", "B"});
    EMField f;
    f.E = vec3_of(n, "E");
    f.B = vec3_of(n, "B");
    s.stress = StressEnergyField::from_em([f](const Vec4&) { return f; }, "em-uniform");
  } else if (kind == "em_frame_plane_wave") {
    n.allow_only({"kind", "amplitude", "omega"});
    const double e0 = n.number("amplitude"), w = n.number("omega");
    const MetricFamily fam = *s.family;
    s.stress = StressEnergyField::em_on_diagonal_metric(
        plane_wave_along_x([e0, w](double t, double x) { return e0 * std::cos(w * (x - t)); }),
        [fam](const Vec4& x) { return fam.fiducial(x); }, "em-frame-plane-wave");
  } else if (kind == "dust") {
    n.allow_only({"kind", "rho", "velocity"});
    const double rho = n.number("rho");
    const std::array<double, 4> v = n.vec4("velocity");
    const Vec4 u(v[0], v[1], v[2], v[3]);
    s.stress = StressEnergyField("dust", [rho, u](const Vec4&) { return dust_tensor(rho, u); });
  } else if (kind == "static_energy") {
    n.allow_only({"kind", "density"});
    const double rho = n.number("density");
    s.stress = StressEnergyField("static-energy", [rho](const Vec4&) {
      Mat4 t = Mat4::Zero();
      t(0, 0) = rho;
      return t;
    });
  } else if (kind == "grid") {
    n.allow_only({"kind", "path"});
    s.stress = StressEnergyField::from_grid(
        read_grid(resolve(base_dir, n.text("path")), n.path("path")));
  } else if (kind == "conserved_spherical_test") {
    n.allow_only({"kind"});
    s.stress = conserved_spherical_test_tensor(s.test_region);
  } else if (kind == "nonconserved_spherical_test") {
    n.allow_only({"kind"});
    s.stress = nonconserved_spherical_test_tensor(s.test_region);
  } else if (kind == "zero") {
    n.allow_only({"kind"});
    s.stress = StressEnergyField("zero", [](const Vec4&) { return Mat4(Mat4::Zero()); });
  } else {
    throw ConfigError(n.path("kind"),
                      "unknown stress-energy kind '" + kind +
                          "' (probe_plane_wave, em_uniform, em_frame_plane_wave, dust, "
                          "static_energy, grid, conserved_spherical_test, "
                          "nonconserved_spherical_test, zero)");
  }
}

void build_simulation(Scenario& s, const Node& root) {
  if (!root.has("simulation")) return;
  const Node n = root.child("simulation");
  n.allow_only({"N", "seed", "A_true", "dump"});
  SimulationSpec sim;
  const long long N = n.integer("N");
  if (N < 1) throw ConfigError(n.path("N"), "need at least one sample");
  const long long seed = n.integer("seed", 0);
  if (seed < 0) throw ConfigError(n.path("seed"), "must be non-negative");
  sim.N = static_cast<std::size_t>(N);
  sim.seed = static_cast<std::uint64_t>(seed);
  sim.A_true = n.number("A_true", 0.0);
  sim.dump_path = n.text("dump", "");
  s.simulation = sim;
}

void parse_analysis(Scenario& s, const Node& root) {
  const Json empty = Json::object();
  const Node a = root.has("analysis") ? root.child("analysis") : Node(empty, "analysis");
  s.analysis_name = a.text("kind", "amplitude");
  if (s.analysis_name == "amplitude") {
    a.allow_only({"kind"});
    s.analysis = AnalysisKind::Amplitude;
  } else if (s.analysis_name == "trace-null") {
    a.allow_only({"kind"});
    s.analysis = AnalysisKind::TraceNull;
  } else if (s.analysis_name == "coordinate-check") {
    a.allow_only({"kind", "K", "resolution", "residual_samples"});
    s.analysis = AnalysisKind::CoordinateCheck;
    s.test_region = a.has("K") ? box_of(a.child("K")) : default_test_region();
    s.coordinate_options.resolution = static_cast<int>(a.integer("resolution", 32));
    s.coordinate_options.residual_samples = static_cast<int>(a.integer("residual_samples", 8));
    if (s.coordinate_options.resolution < 4 || s.coordinate_options.resolution % 2 != 0) {
      throw ConfigError(a.path("resolution"), "must be even and at least 4");
    }
  } else if (s.analysis_name == "proper-time") {
    a.allow_only({"kind", "energy_variance"});
    s.analysis = AnalysisKind::ProperTime;
    s.energy_variance = a.number("energy_variance");
    if (!(s.energy_variance > 0.0)) throw ConfigError(a.path("energy_variance"), "must be positive");
  } else if (s.analysis_name == "component") {
    a.allow_only({"kind", "component_variance"});
    s.analysis = AnalysisKind::Component;
    s.component_variance = a.number("component_variance");
    if (!(s.component_variance > 0.0)) {
      throw ConfigError(a.path("component_variance"), "must be positive");
    }
  } else {
    throw ConfigError(a.path("kind"), "unknown analysis '" + s.analysis_name +
                                          "' (amplitude, trace-null, coordinate-check, "
                                          "proper-time, component)");
  }
}

void require(bool present, const std::string& key, const std::string& why) {
  if (!present) throw ConfigError(key, "required " + why);
}

void apply_overrides(Json& config, const Overrides& o) {
  if (o.seed || o.samples) {
    if (!config.contains("simulation") || !config["simulation"].is_object()) {
      throw ConfigError("simulation", "--seed and --samples need a simulation section");
    }
    if (o.seed) config["simulation"]["seed"] = *o.seed;
    if (o.samples) config["simulation"]["N"] = *o.samples;
  }
  if (!(o.resolution_multiplier > 0.0)) {
    throw ConfigError("resolution", "multiplier must be positive");
  }
  if (o.resolution_multiplier != 1.0) {
    const double m = o.resolution_multiplier;
    if (config.contains("region") && config["region"].is_object()) {
      const Node r(config["region"], "region");
      std::array<int, 4> res = r.resolution("resolution", {32, 32, 32, 32});
      Json scaled = Json::array();
      for (int v : res) scaled.push_back(std::max(2, static_cast<int>(std::lround(v * m))));
      config["region"]["resolution"] = scaled;
    }
    if (config.contains("analysis") && config["analysis"].is_object() &&
        config["analysis"].value("kind", "") == "coordinate-check") {
      const int base = config["analysis"].value("resolution", 32);
      const int scaled = std::max(4, 2 * static_cast<int>(std::lround(0.5 * base * m)));
      config["analysis"]["resolution"] = scaled;
    }
  }
  for (const std::string& t : o.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("tolerance", "expected key=value, got '" + t + "'");
    Tolerances::defaults().get(t.substr(0, eq));  // reject unknown keys early
    if (!config.contains("tolerances")) config["tolerances"] = Json::object();
    try {
      config["tolerances"][t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("tolerance." + t.substr(0, eq), "value is not a number");
    }
  }
}

}  // namespace

Node::Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {
  if (!j.is_object()) throw ConfigError(path_, "expected an object, got " + type_name(j));
}

bool Node::has(const std::string& key) const { return j_->contains(key); }

std::string Node::path(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

const Json& Node::at(const std::string& key) const {
  if (!has(key)) throw ConfigError(path(key), "missing required entry");
  return j_->at(key);
}

Node Node::child(const std::string& key) const { return Node(at(key), path(key)); }

double Node::number(const std::string& key) const {
  const Json& v = at(key);
  if (!v.is_number()) throw ConfigError(path(key), "expected a number, got " + type_name(v));
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path(key), "must be finite");
  return d;
}

double Node::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long Node::integer(const std::string& key) const {
  const Json& v = at(key);
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
  }
  throw ConfigError(path(key), "expected an integer, got " + type_name(v));
}

long long Node::integer(const std::string& key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string Node::text(const std::string& key) const {
  const Json& v = at(key);
  if (!v.is_string()) throw ConfigError(path(key), "expected a string, got " + type_name(v));
  return v.get<std::string>();
}

std::string Node::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

bool Node::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
  return v.get<bool>();
}

std::array<double, 4> Node::vec4(const std::string& key) const {
  const Json& v = at(key);
  if (!v.is_array() || v.size() != 4) throw ConfigError(path(key), "expected 4 numbers");
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    if (!v[i].is_number()) throw ConfigError(path(key), "expected 4 numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

std::array<int, 4> Node::resolution(const std::string& key, std::array<int, 4> fallback) const {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  std::array<int, 4> out{};
  if (v.is_number_integer()) {
    out.fill(v.get<int>());
    return out;
  }
  if (!v.is_array() || v.size() != 4) throw ConfigError(path(key), "expected an integer or 4 integers");
  for (int i = 0; i < 4; ++i) {
    if (!v[i].is_number_integer()) throw ConfigError(path(key), "expected 4 integers");
    out[i] = v[i].get<int>();
  }
  return out;
}

void Node::allow_only(std::initializer_list<const char*> allowed) const {
  for (const auto& item : j_->items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) {
      std::string list;
      for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      throw ConfigError(path(item.key()), "unknown key (expected one of: " + list + ")");
    }
  }
}

Tolerances Tolerances::defaults() {
  Tolerances t;
  t.values_ = {
      {"crlb.heisenberg", 1e-10},         {"crlb.commutator", 1e-12},
      {"crlb.minimum_uncertainty", 1e-10}, {"crlb.shot_noise", 1e-9},
      {"crlb.squeezing", 1e-9},           {"crlb.broadband", 1e-3},
      {"mean_field.relative", 1e-10},     {"mean_field.slope", 0.1},
      {"mean_field.proportionality", 0.05},
      {"trace_null.relative", 1e-12},     {"coordinate.refinement_ratio", 3.0},
      {"coordinate.conservation", 1e-6},  {"reduction.relative", 1e-9},
      {"estimator.variance_sigmas", 3.0}, {"estimator.bias_sigmas", 5.0},
      {"fisher.saturation", 1e-9},        {"fisher.histogram", 0.05},
      {"wick_fock.absolute", 1e-8},       {"correlator.relative", 1e-2},
      {"derivative.relative", 1e-6},
  };
  return t;
}

double Tolerances::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("tolerance." + key, "unknown tolerance (known: " + join_keys(values_) + ")");
  }
  return it->second;
}

void Tolerances::set(const std::string& key, double value) {
  get(key);
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ConfigError("tolerance." + key, "must be a finite non-negative number");
  }
  values_[key] = value;
}

void Tolerances::set_from_text(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("tolerance", "expected key=value");
  double v = 0.0;
  try {
    v = std::stod(assignment.substr(eq + 1));
  } catch (const std::exception&) {
    throw ConfigError("tolerance." + assignment.substr(0, eq), "value is not a number");
  }
  set(assignment.substr(0, eq), v);
}

Scenario parse_scenario(Json config, const Overrides& overrides, const std::string& base_dir) {
  apply_overrides(config, overrides);
  const Node root(config, "");
  root.allow_only({"schema", "name", "description", "hbar", "family", "bump", "stress_energy",
                   "region", "probe", "simulation", "tolerances", "analysis"});
  const std::string schema = root.text("schema", kScenarioSchema);
  if (schema != kScenarioSchema) {
    throw ConfigError("schema", "unsupported '" + schema + "', expected " + kScenarioSchema);
  }
  Scenario s;
  s.name = root.text("name", "unnamed");
  s.description = root.text("description", "");
  s.hbar = root.number("hbar", 1.0);
  if (!(s.hbar > 0.0)) throw ConfigError("hbar", "must be positive");

  if (root.has("tolerances")) {
    const Node t = root.child("tolerances");
    for (const auto& item : t.json().items()) s.tolerances.set(item.key(), t.number(item.key()));
  }
  parse_analysis(s, root);
  build_family(s, root, base_dir);
  build_bump(s, root);
  build_region(s, root);
  build_probe(s, root, base_dir);
  build_stress(s, root, base_dir);
  build_simulation(s, root);

  switch (s.analysis) {
    case AnalysisKind::Amplitude:
      require(s.probe.has_value(), "probe", "for the amplitude analysis");
      require(s.region.has_value(), "region", "for the amplitude analysis");
      require(s.stress.has_value(), "stress_energy", "for the amplitude analysis");
      break;
    case AnalysisKind::TraceNull:
    case AnalysisKind::Component:
      require(s.region.has_value(), "region", "for the " + s.analysis_name + " analysis");
      require(s.stress.has_value(), "stress_energy", "for the " + s.analysis_name + " analysis");
      break;
    case AnalysisKind::ProperTime:
      require(s.region.has_value(), "region", "for the proper-time analysis");
      require(static_cast<bool>(s.lapse_profile), "family.params.lapse",
              "for the proper-time analysis (uniform_lapse family)");
      break;
    case AnalysisKind::CoordinateCheck:
      break;
  }
  if (s.analysis == AnalysisKind::Component && s.family->name().rfind("component_perturbation", 0) != 0) {
    throw ConfigError("family.name", "the component analysis needs component_perturbation");
  }
  s.source = std::move(config);
  return s;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", path + ": " + e.what());
  }
}

const BundledScenario& find_bundled(const std::string& name) {
  std::string names;
  for (const BundledScenario& b : bundled_scenarios()) {
    if (b.name == name) return b;
    names += (names.empty() ? "" : ", ") + b.name;
  }
  throw ConfigError("scenario", "unknown scenario '" + name + "' (available: " + names + ")");
}

}  // namespace qcrb::cli
