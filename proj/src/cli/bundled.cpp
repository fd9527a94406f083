#include "qcrb/cli/scenario.hpp"

namespace qcrb::cli {

namespace {

BundledScenario make(const char* name, const char* description, const char* text) {
  Json config = Json::parse(text);
  config["name"] = name;
  config["description"] = description;
  Json ordered = Json::object();
  ordered["schema"] = kScenarioSchema;
  ordered["name"] = name;
  ordered["description"] = description;
  for (const auto& item : config.items()) {
    if (!ordered.contains(item.key())) ordered[item.key()] = item.value();
  }
  return {name, description, ordered};
}

// omega tau = 2 pi 10, nbar = 1e4; the region spans one probe window and one
// unit of transverse area so the field energy per mode is hbar omega |alpha|^2.
constexpr const char* kMonochromatic = R"({
  "hbar": 1.0,
  "family": {"name": "gw_plane_wave", "params": {"amplitude0": 0.0}},
  "stress_energy": {"kind": "probe_plane_wave"},
  "region": {"lo": [0, 0, 0, 0], "hi": [1, 1, 1, 1], "rule": "trapezoid",
             "resolution": [64, 64, 2, 2]},
  "probe": {"spectrum": {"kind": "monochromatic", "omega": 62.831853071795862, "nbar": 10000},
            "tau": 1.0, "squeeze_r": 0.0, "reference": "coherent"},
  "analysis": {"kind": "amplitude"}
})";

constexpr const char* kBroadband = R"({
  "hbar": 1.0,
  "family": {"name": "gw_plane_wave", "params": {"amplitude0": 0.0}},
  "stress_energy": {"kind": "probe_plane_wave"},
  "region": {"lo": [0, 0, 0, 0], "hi": [1, 1, 1, 1], "rule": "trapezoid",
             "resolution": [128, 128, 2, 2]},
  "probe": {"spectrum": {"kind": "gaussian_band", "omega0": 62.831853071795862,
                         "fractional_width": 0.1, "nbar": 10000, "modes": 201, "n_sigma": 6},
            "tau": 1.0, "reference": "coherent"},
  "analysis": {"kind": "amplitude"}
})";

constexpr const char* kSqueezed = R"({
  "hbar": 1.0,
  "family": {"name": "gw_plane_wave", "params": {"amplitude0": 0.0}},
  "stress_energy": {"kind": "probe_plane_wave"},
  "region": {"lo": [0, 0, 0, 0], "hi": [1, 1, 1, 1], "rule": "trapezoid",
             "resolution": [64, 64, 2, 2]},
  "probe": {"spectrum": {"kind": "monochromatic", "omega": 62.831853071795862, "nbar": 10000},
            "tau": 1.0, "squeeze_r": 1.0, "reference": "squeezed-vacuum"},
  "simulation": {"N": 1000000, "seed": 20240601, "A_true": 0.0001},
  "analysis": {"kind": "amplitude"}
})";

// Conformal chart (eta, chi, theta, phi), away from the big bang and the poles.
constexpr const char* kFlrw = R"({
  "hbar": 1.0,
  "family": {"name": "flrw_closed_dust", "params": {"a_max": 1.0}},
  "stress_energy": {"kind": "em_frame_plane_wave", "amplitude": 0.5, "omega": 6.0},
  "region": {"lo": [1.0, 0.5, 1.0, 0.0], "hi": [2.0, 1.5, 2.0, 1.0], "rule": "trapezoid",
             "resolution": [16, 16, 8, 8]},
  "analysis": {"kind": "trace-null"}
})";

constexpr const char* kDeSitter = R"({
  "hbar": 1.0,
  "family": {"name": "de_sitter", "params": {"lambda": 3.0}},
  "stress_energy": {"kind": "em_frame_plane_wave", "amplitude": 0.5, "omega": 6.0},
  "region": {"lo": [-1.0, 0.5, 1.0, 0.0], "hi": [1.0, 1.5, 2.0, 1.0], "rule": "trapezoid",
             "resolution": [16, 16, 8, 8]},
  "analysis": {"kind": "trace-null"}
})";

constexpr const char* kCoordinate = R"({
  "hbar": 1.0,
  "family": {"name": "schwarzschild", "params": {"m0": 0.0}},
  "stress_energy": {"kind": "conserved_spherical_test"},
  "analysis": {"kind": "coordinate-check",
               "K": {"lo": [0.0, 1.0, 0.0, 0.0], "hi": [1.0, 2.0, 3.141592653589793, 6.283185307179586]},
               "resolution": 32}
})";

// Static energy density probed by a constant diagonal perturbation of g_00.
constexpr const char* kUnruh = R"({
  "hbar": 1.0,
  "family": {"name": "component_perturbation", "params": {"mu0": 0, "nu0": 0, "theta0": 0.0}},
  "stress_energy": {"kind": "static_energy", "density": 2.0},
  "region": {"lo": [0, 0, 0, 0], "hi": [1, 1, 1, 1], "rule": "gauss-legendre",
             "resolution": [2, 2, 2, 2], "points_per_panel": 2},
  "analysis": {"kind": "component", "component_variance": 0.7}
})";

constexpr const char* kProperTime = R"({
  "hbar": 1.0,
  "family": {"name": "uniform_lapse",
             "params": {"s0": 0.0, "lapse": {"kind": "sinusoid", "mean": 1.0, "amplitude": 0.5,
                                             "omega": 1.0}}},
  "region": {"lo": [0, 0, 0, 0], "hi": [2, 1, 1, 1], "rule": "gauss-legendre",
             "resolution": [4, 2, 2, 2], "points_per_panel": 8},
  "analysis": {"kind": "proper-time", "energy_variance": 0.3}
})";

}  // namespace

const std::vector<BundledScenario>& bundled_scenarios() {
  static const std::vector<BundledScenario> list = {
      make("gw-monochromatic-coherent",
           "Gravitational-wave amplitude with a coherent monochromatic probe (shot noise).",
           kMonochromatic),
      make("gw-broadband-coherent",
           "Gravitational-wave amplitude with a 10% Gaussian-band coherent probe.", kBroadband),
      make("gw-squeezed-r1", "Monochromatic probe squeezed with r = 1; includes a Monte Carlo run.",
           kSqueezed),
      make("flrw-em-probe", "Closed dust FLRW scale factor probed by a Maxwell field (trace-null).",
           kFlrw),
      make("desitter-em-probe", "de Sitter Lambda probed by a Maxwell field (trace-null).", kDeSitter),
      make("schwarzschild-coordinate-check",
           "Schwarzschild versus isotropic mass generator for a conserved compact test tensor.",
           kCoordinate),
      make("unruh-component", "Constant g_00 perturbation and the energy-time uncertainty product.",
           kUnruh),
      make("proper-time-reduction", "Uniform lapse perturbation reduced to the time-energy relation.",
           kProperTime),
  };
  return list;
}

}  // namespace qcrb::cli
