#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qcrb/probe/spectrum.hpp"

namespace qcrb {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

/// Multimode Gaussian state in complex-moment form:
/// mean_k = <a_k>, N_jk = <da_j^+ da_k>, M_jk = <da_j da_k> with da = a - <a>.
class GaussianState {
 public:
  GaussianState(VecC mean, MatC N, MatC M);

  static GaussianState vacuum(int modes);
  static GaussianState coherent(const VecC& alpha);
  /// D(alpha) S_b(r) |0> with S_b(r) = exp(r/2 (b^+2 - b^2)) and b = sum_k c_k a_k, |c| = 1.
  static GaussianState displaced_squeezed(const VecC& alpha, const VecC& c, double r);

  int modes() const { return static_cast<int>(mean_.size()); }
  const VecC& mean() const { return mean_; }
  const MatC& N() const { return N_; }
  const MatC& M() const { return M_; }

  /// L = sum_k (u_k a_k + h.c.): <L> and <dL^2> = |u|^2 + 2 u^+ N u + 2 Re(u^T M u).
  double linear_mean(const VecC& u) const;
  double linear_variance(const VecC& u) const;

  /// F = sum_jk W_jk da_j^+ da_k with W Hermitian; Wick factorization of the fourth moment.
  double quadratic_mean(const MatC& W) const;
  double quadratic_variance(const MatC& W) const;

 private:
  VecC mean_;
  MatC N_;
  MatC M_;
};

/// Gaussian state whose fluctuations live in one effective mode b = sum c_k a_k:
/// N_jk = c_j conj(c_k) N_b and M_jk = conj(c_j) conj(c_k) M_b, kept in factored form so
/// every query is O(modes).
class EffectiveModeState {
 public:
  EffectiveModeState(std::vector<cplx> mean, std::vector<cplx> c, double squeeze_r);

  double N_b() const { return n_b_; }
  cplx M_b() const { return m_b_; }
  const std::vector<cplx>& coefficients() const { return c_; }
  const std::vector<cplx>& mean() const { return mean_; }

  double linear_variance(const std::vector<cplx>& u) const;
  /// Variance of sum_k w_k da_k^+ da_k (diagonal W) in the factored covariance.
  double diagonal_quadratic_variance(const std::vector<double>& w) const;

  /// Dense equivalent, for cross-checks on small lattices.
  GaussianState dense() const;

 private:
  std::vector<cplx> mean_;
  std::vector<cplx> c_;
  double n_b_;
  cplx m_b_;
};

}  // namespace qcrb
