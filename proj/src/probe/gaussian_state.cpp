#include "qcrb/probe/gaussian_state.hpp"

#include <cmath>

#include "qcrb/core/summation.hpp"

namespace qcrb {

GaussianState::GaussianState(VecC mean, MatC N, MatC M)
    : mean_(std::move(mean)), N_(std::move(N)), M_(std::move(M)) {
  const auto n = mean_.size();
  if (N_.rows() != n || N_.cols() != n || M_.rows() != n || M_.cols() != n) {
    throw ConfigError("gaussian_state", "moment matrices do not match the mode count");
  }
}

GaussianState GaussianState::vacuum(int modes) {
  return GaussianState(VecC::Zero(modes), MatC::Zero(modes, modes), MatC::Zero(modes, modes));
}

GaussianState GaussianState::coherent(const VecC& alpha) {
  const auto n = alpha.size();
  return GaussianState(alpha, MatC::Zero(n, n), MatC::Zero(n, n));
}

GaussianState GaussianState::displaced_squeezed(const VecC& alpha, const VecC& c, double r) {
  if (alpha.size() != c.size()) throw ConfigError("gaussian_state", "alpha and c differ in size");
  if (std::abs(c.squaredNorm() - 1.0) > 1e-12) {
    throw ConfigError("gaussian_state", "effective-mode coefficients must have unit norm");
  }
  const double sh = std::sinh(r);
  const double ch = std::cosh(r);
  MatC N = c * c.adjoint() * (sh * sh);
  MatC M = c.conjugate() * c.conjugate().transpose() * (sh * ch);
  return GaussianState(alpha, std::move(N), std::move(M));
}

double GaussianState::linear_mean(const VecC& u) const {
  return 2.0 * std::real(u.transpose().dot(mean_.conjugate()));
}

double GaussianState::linear_variance(const VecC& u) const {
  const double quad = std::real(u.dot(N_ * u));
  const cplx anom = u.conjugate().dot(M_ * u);
  return u.squaredNorm() + 2.0 * quad + 2.0 * std::real(anom);
}

double GaussianState::quadratic_mean(const MatC& W) const {
  return std::real(W.cwiseProduct(N_).sum());
}

double GaussianState::quadratic_variance(const MatC& W) const {
  const auto n = mean_.size();
  const MatC normal = W * (MatC::Identity(n, n) + N_.transpose()) * W;
  const MatC anomalous = W * M_ * W.transpose();
  return std::real(normal.cwiseProduct(N_).sum() + anomalous.cwiseProduct(M_.conjugate()).sum());
}

EffectiveModeState::EffectiveModeState(std::vector<cplx> mean, std::vector<cplx> c,
                                       double squeeze_r)
    : mean_(std::move(mean)),
      c_(std::move(c)),
      n_b_(std::sinh(squeeze_r) * std::sinh(squeeze_r)),
      m_b_(std::sinh(squeeze_r) * std::cosh(squeeze_r)) {
  if (mean_.size() != c_.size()) {
    throw ConfigError("gaussian_state", "mean and effective-mode coefficients differ in size");
  }
}

double EffectiveModeState::linear_variance(const std::vector<cplx>& u) const {
  if (u.size() != c_.size()) throw ConfigError("gaussian_state", "observable size mismatch");
  CompensatedSum norm;
  CompensatedComplexSum beta;
  for (std::size_t k = 0; k < u.size(); ++k) {
    norm.add(std::norm(u[k]));
    beta.add(std::conj(c_[k]) * u[k]);
  }
  const cplx b = beta.value();
  return norm.value() + 2.0 * n_b_ * std::norm(b) + 2.0 * std::real(m_b_ * b * b);
}

double EffectiveModeState::diagonal_quadratic_variance(const std::vector<double>& w) const {
  if (w.size() != c_.size()) throw ConfigError("gaussian_state", "observable size mismatch");
  CompensatedSum first, second;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double p = std::norm(c_[k]);
    first.add(w[k] * w[k] * p);
    second.add(w[k] * p);
  }
  const double s = second.value();
  return n_b_ * first.value() + (n_b_ * n_b_ + std::norm(m_b_)) * s * s;
}

GaussianState EffectiveModeState::dense() const {
  const auto n = static_cast<Eigen::Index>(c_.size());
  VecC mean(n), c(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    mean[k] = mean_[k];
    c[k] = c_[k];
  }
  MatC N = c * c.adjoint() * n_b_;
  MatC M = c.conjugate() * c.conjugate().transpose() * m_b_;
  return GaussianState(std::move(mean), std::move(N), std::move(M));
}

}  // namespace qcrb
