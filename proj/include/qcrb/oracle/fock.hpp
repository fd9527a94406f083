#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qcrb/probe/gaussian_state.hpp"

namespace qcrb::oracle {

using SpMat = Eigen::SparseMatrix<cplx>;

/// Truncated tensor-product Fock space, occupation 0..cutoff in each mode.
/// Brute-force reference for the Gaussian moment formulas; independent of them.
class FockSpace {
 public:
  FockSpace(int modes, int cutoff);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  Eigen::Index dimension() const { return dim_; }

  const SpMat& a(int k) const { return lowering_[k]; }
  SpMat identity() const;
  VecC vacuum() const;

  /// exp(G) v by a Taylor series on slices of unit norm.
  VecC apply_exp(const SpMat& G, VecC v) const;

  /// D(alpha) S_b(r) |0>, b = sum_k c_k a_k.
  VecC displaced_squeezed(const VecC& alpha, const VecC& c, double r) const;

  /// sum_k (u_k a_k + h.c.)
  SpMat linear(const VecC& u) const;
  /// sum_jk W_jk (a_j - alpha_j)^+ (a_k - alpha_k)
  SpMat quadratic(const MatC& W, const VecC& alpha) const;

  /// Probability in states with some mode occupied above cutoff - margin.
  double tail_weight(const VecC& psi, int margin) const;

 private:
  int modes_;
  int cutoff_;
  Eigen::Index dim_;
  std::vector<SpMat> lowering_;
};

struct PreparedState {
  FockSpace space;
  VecC psi;
};

/// D(alpha) S_b(r)|0> with the per-mode cutoff raised from `min_cutoff` in steps of 10
/// until the weight within 3 levels of the cutoff is below `tail_tolerance`.
PreparedState prepare_displaced_squeezed(const VecC& alpha, const VecC& c, double r,
                                         int min_cutoff = 30, double tail_tolerance = 1e-16,
                                         int max_cutoff = 400);

/// <psi|A^2|psi> - <psi|A|psi>^2 for Hermitian A, with psi normalized first.
double variance(const SpMat& A, const VecC& psi);
double expectation(const SpMat& A, const VecC& psi);

}  // namespace qcrb::oracle
