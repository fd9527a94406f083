#pragma once

#include <complex>
#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "qcrb/core/types.hpp"

namespace qcrb {

using cplx = std::complex<double>;

enum class Polarization { Y, Z };

struct Mode {
  Vec3 k = Vec3::Zero();
  double omega = 0.0;  // |k|
  Polarization polarization = Polarization::Y;
  double weight = 1.0;  // d^3k / (2 pi)^3 represented by the cell
};

/// Discrete set of plane-wave modes with unit-commutator annihilation operators.
class ModeLattice {
 public:
  ModeLattice() = default;
  /// Throws ConfigError if any omega or weight is not positive.
  explicit ModeLattice(std::vector<Mode> modes);

  std::size_t size() const { return modes_.size(); }
  const Mode& operator[](std::size_t i) const { return modes_[i]; }
  const std::vector<Mode>& modes() const { return modes_; }
  double total_weight() const;
  bool same_as(const ModeLattice& other) const;

 private:
  std::vector<Mode> modes_;
};

/// Mean-field displacement alpha_k = <a_k> over a lattice, observed for a window tau.
/// Cell weights are absorbed into |alpha_k|^2, so nbar = sum |alpha_k|^2.
struct ModeSpectrum {
  ModeLattice lattice;
  std::vector<cplx> alpha;
  double tau = 1.0;
  /// Modes dropped by the DC cutoff when the spectrum was built.
  std::size_t dc_excluded = 0;
  std::vector<std::string> warnings;

  double mean_photon_number() const;
  ModeSpectrum scaled(double lambda) const;
};

/// Builders for paraxial spectra travelling along +x, polarized along y. Every builder
/// applies the DC cutoff omega >= dc_multiplier * 2 pi / tau and records what it dropped.
namespace spectra {

ModeSpectrum monochromatic(double omega, double nbar, double tau, double dc_multiplier = 1.0);

/// Gaussian power spectrum centred on omega0 with standard deviation
/// fractional_width * omega0, sampled by `modes` cells over +-n_sigma sigma;
/// |alpha_k|^2 = nbar * density(omega_k) * d omega.
ModeSpectrum gaussian_band(double omega0, double fractional_width, double nbar, double tau,
                           int modes, double n_sigma = 6.0, double dc_multiplier = 1.0);

/// Uniform power over [omega_lo, omega_hi] split into `modes` equal cells.
ModeSpectrum flat_band(double omega_lo, double omega_hi, double nbar, double tau, int modes,
                       double dc_multiplier = 1.0);

/// Records "kx ky kz re_alpha im_alpha" per line; '#' starts a comment.
ModeSpectrum tabulated(std::istream& records, double tau, double dc_multiplier = 1.0);

/// Drops modes below the DC cutoff; throws ConfigError if nothing remains.
ModeSpectrum apply_dc_cutoff(const ModeSpectrum& in, double dc_multiplier = 1.0);

}  // namespace spectra

/// C = (1/2) hbar sum_k (omega_k tau)^2 |alpha_k|^2. Throws ConfigError for an empty lattice.
double effective_constant_C(const ModeSpectrum& spectrum, double hbar = 1.0);

/// alpha_k -> i alpha_k.
ModeSpectrum conjugate_spectrum(const ModeSpectrum& spectrum);

/// (1/2) hbar sum_k (omega_k tau)^2 Im(conj(alpha1_k) alpha2_k); [X1, X2] = i hbar times this.
double commutator_constant(const std::vector<cplx>& alpha1, const std::vector<cplx>& alpha2,
                           const ModeLattice& lattice, double tau, double hbar = 1.0);

/// c_k = hbar omega_k tau conj(alpha_k) / sqrt(2 hbar C), so b = sum c_k a_k and sum |c_k|^2 = 1.
std::vector<cplx> effective_mode_coefficients(const ModeSpectrum& spectrum, double hbar = 1.0);

}  // namespace qcrb
