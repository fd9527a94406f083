#include "qcrb/probe/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "qcrb/core/summation.hpp"

namespace qcrb {

ModeLattice::ModeLattice(std::vector<Mode> modes) : modes_(std::move(modes)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (!(modes_[i].omega > 0.0) || !std::isfinite(modes_[i].omega)) {
      throw ConfigError("spectrum.modes", "mode " + std::to_string(i) + " has omega <= 0");
    }
    if (!(modes_[i].weight > 0.0) || !std::isfinite(modes_[i].weight)) {
      throw ConfigError("spectrum.modes", "mode " + std::to_string(i) + " has weight <= 0");
    }
  }
}

double ModeLattice::total_weight() const {
  CompensatedSum s;
  for (const auto& m : modes_) s.add(m.weight);
  return s.value();
}

bool ModeLattice::same_as(const ModeLattice& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (modes_[i].k != other.modes_[i].k || modes_[i].polarization != other.modes_[i].polarization) {
      return false;
    }
  }
  return true;
}

double ModeSpectrum::mean_photon_number() const {
  CompensatedSum s;
  for (const auto& a : alpha) s.add(std::norm(a));
  return s.value();
}

ModeSpectrum ModeSpectrum::scaled(double lambda) const {
  ModeSpectrum out = *this;
  for (auto& a : out.alpha) a *= lambda;
  return out;
}

namespace spectra {

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0)) throw ConfigError("probe.tau", "must be positive");
}

Mode along_x(double omega, double width) {
  Mode m;
  m.k = Vec3(omega, 0.0, 0.0);
  m.omega = omega;
  m.polarization = Polarization::Y;
  m.weight = width / (2.0 * kPi);
  return m;
}

ModeSpectrum assemble(std::vector<Mode> modes, std::vector<cplx> alpha, double tau,
                      double dc_multiplier) {
  ModeSpectrum s;
  s.lattice = ModeLattice(std::move(modes));
  s.alpha = std::move(alpha);
  s.tau = tau;
  return apply_dc_cutoff(s, dc_multiplier);
}

}  // namespace

ModeSpectrum monochromatic(double omega, double nbar, double tau, double dc_multiplier) {
  check_tau(tau);
  if (!(nbar >= 0.0)) throw ConfigError("probe.nbar", "must be non-negative");
  return assemble({along_x(omega, 1.0)}, {cplx(std::sqrt(nbar), 0.0)}, tau, dc_multiplier);
}

ModeSpectrum gaussian_band(double omega0, double fractional_width, double nbar, double tau,
                           int modes, double n_sigma, double dc_multiplier) {
  check_tau(tau);
  if (!(fractional_width > 0.0)) throw ConfigError("probe.fractional_width", "must be positive");
  if (modes < 1) throw ConfigError("probe.modes", "need at least one mode");
  const double sigma = fractional_width * omega0;
  const double lo = omega0 - n_sigma * sigma;
  const double dw = 2.0 * n_sigma * sigma / modes;
  std::vector<Mode> lattice;
  std::vector<cplx> alpha;
  for (int i = 0; i < modes; ++i) {
    const double w = lo + dw * (i + 0.5);
    if (w <= 0.0) continue;
    const double z = (w - omega0) / sigma;
    const double density = std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
    lattice.push_back(along_x(w, dw));
    alpha.emplace_back(std::sqrt(nbar * density * dw), 0.0);
  }
  return assemble(std::move(lattice), std::move(alpha), tau, dc_multiplier);
}

ModeSpectrum flat_band(double omega_lo, double omega_hi, double nbar, double tau, int modes,
                       double dc_multiplier) {
  check_tau(tau);
  if (!(omega_hi > omega_lo) || !(omega_lo > 0.0)) {
    throw ConfigError("probe.band", "need 0 < omega_lo < omega_hi");
  }
  if (modes < 1) throw ConfigError("probe.modes", "need at least one mode");
  const double dw = (omega_hi - omega_lo) / modes;
  std::vector<Mode> lattice;
  std::vector<cplx> alpha;
  for (int i = 0; i < modes; ++i) {
    lattice.push_back(along_x(omega_lo + dw * (i + 0.5), dw));
    alpha.emplace_back(std::sqrt(nbar / modes), 0.0);
  }
  return assemble(std::move(lattice), std::move(alpha), tau, dc_multiplier);
}

ModeSpectrum tabulated(std::istream& records, double tau, double dc_multiplier) {
  check_tau(tau);
  std::vector<Mode> lattice;
  std::vector<cplx> alpha;
  std::string line;
  int line_no = 0;
  while (std::getline(records, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double kx, ky, kz, re, im;
    if (!(ls >> kx)) continue;
    if (!(ls >> ky >> kz >> re >> im)) {
      throw ConfigError("probe.spectrum_file",
                        "line " + std::to_string(line_no) + ": expected kx ky kz re im");
    }
    Mode m;
    m.k = Vec3(kx, ky, kz);
    m.omega = m.k.norm();
    m.weight = 1.0;
    lattice.push_back(m);
    alpha.emplace_back(re, im);
  }
  return assemble(std::move(lattice), std::move(alpha), tau, dc_multiplier);
}

ModeSpectrum apply_dc_cutoff(const ModeSpectrum& in, double dc_multiplier) {
  const double cutoff = dc_multiplier * 2.0 * kPi / in.tau;
  std::vector<Mode> kept;
  std::vector<cplx> alpha;
  std::size_t dropped = 0;
  std::size_t off_axis = 0;
  for (std::size_t i = 0; i < in.lattice.size(); ++i) {
    const Mode& m = in.lattice[i];
    if (m.omega < cutoff) {
      ++dropped;
      continue;
    }
    if (in.alpha[i] != cplx(0.0) &&
        (m.polarization != Polarization::Y || m.k[0] < std::cos(0.1) * m.omega)) {
      ++off_axis;
    }
    kept.push_back(m);
    alpha.push_back(in.alpha[i]);
  }
  if (kept.empty()) {
    throw ConfigError("probe.spectrum", "every mode lies below the DC cutoff 2 pi / tau");
  }
  ModeSpectrum out;
  out.lattice = ModeLattice(std::move(kept));
  out.alpha = std::move(alpha);
  out.tau = in.tau;
  out.dc_excluded = in.dc_excluded + dropped;
  out.warnings = in.warnings;
  if (off_axis > 0) {
    out.warnings.push_back(std::to_string(off_axis) +
                           " occupied modes are not y-polarized along +x; paraxial model assumed");
  }
  return out;
}

}  // namespace spectra

namespace {

// Sum of (omega tau)^2 * term(k); shared by C and the commutator so the two agree bitwise.
template <typename Term>
double weighted_sum(const ModeLattice& lattice, double tau, const Term& term) {
  CompensatedSum s;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const double wt = lattice[i].omega * tau;
    s.add(wt * wt * term(i));
  }
  return s.value();
}

}  // namespace

double effective_constant_C(const ModeSpectrum& spectrum, double hbar) {
  if (spectrum.lattice.size() == 0) {
    throw ConfigError("probe.spectrum", "empty spectrum after DC cutoff");
  }
  const auto& a = spectrum.alpha;
  return 0.5 * hbar *
         weighted_sum(spectrum.lattice, spectrum.tau, [&a](std::size_t i) {
           return std::imag(std::conj(a[i]) * (cplx(0.0, 1.0) * a[i]));
         });
}

ModeSpectrum conjugate_spectrum(const ModeSpectrum& spectrum) {
  ModeSpectrum out = spectrum;
  for (auto& a : out.alpha) a = cplx(0.0, 1.0) * a;
  return out;
}

double commutator_constant(const std::vector<cplx>& alpha1, const std::vector<cplx>& alpha2,
                           const ModeLattice& lattice, double tau, double hbar) {
  if (alpha1.size() != lattice.size() || alpha2.size() != lattice.size()) {
    throw ConfigError("probe.spectrum", "spectra are defined on different lattices");
  }
  return 0.5 * hbar * weighted_sum(lattice, tau, [&](std::size_t i) {
           return std::imag(std::conj(alpha1[i]) * alpha2[i]);
         });
}

std::vector<cplx> effective_mode_coefficients(const ModeSpectrum& spectrum, double hbar) {
  const double C = effective_constant_C(spectrum, hbar);
  if (!(C > 0.0)) throw ConfigError("probe.spectrum", "zero mean field: effective mode undefined");
  const double norm = std::sqrt(2.0 * hbar * C);
  std::vector<cplx> c(spectrum.alpha.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = hbar * spectrum.lattice[i].omega * spectrum.tau * std::conj(spectrum.alpha[i]) / norm;
  }
  return c;
}

}  // namespace qcrb
