#include "qcrb/oracle/fock.hpp"

#include <cmath>
#include <vector>

namespace qcrb::oracle {

namespace {

double one_norm(const SpMat& m) {
  double best = 0.0;
  for (int j = 0; j < m.outerSize(); ++j) {
    double col = 0.0;
    for (SpMat::InnerIterator it(m, j); it; ++it) col += std::abs(it.value());
    best = std::max(best, col);
  }
  return best;
}

}  // namespace

FockSpace::FockSpace(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1 || cutoff < 1) throw ConfigError("fock", "need modes >= 1 and cutoff >= 1");
  dim_ = 1;
  for (int k = 0; k < modes; ++k) dim_ *= cutoff + 1;
  // Basis index = sum_k n_k (cutoff+1)^k.
  for (int k = 0; k < modes; ++k) {
    Eigen::Index stride = 1;
    for (int j = 0; j < k; ++j) stride *= cutoff + 1;
    std::vector<Eigen::Triplet<cplx>> entries;
    for (Eigen::Index i = 0; i < dim_; ++i) {
      const int n = static_cast<int>((i / stride) % (cutoff + 1));
      if (n > 0) entries.emplace_back(i - stride, i, std::sqrt(static_cast<double>(n)));
    }
    SpMat a(dim_, dim_);
    a.setFromTriplets(entries.begin(), entries.end());
    lowering_.push_back(std::move(a));
  }
}

SpMat FockSpace::identity() const {
  SpMat id(dim_, dim_);
  id.setIdentity();
  return id;
}

VecC FockSpace::vacuum() const {
  VecC v = VecC::Zero(dim_);
  v[0] = 1.0;
  return v;
}

VecC FockSpace::apply_exp(const SpMat& G, VecC v) const {
  const int slices = std::max(1, static_cast<int>(std::ceil(one_norm(G))));
  const SpMat step = G / static_cast<double>(slices);
  for (int s = 0; s < slices; ++s) {
    VecC term = v;
    VecC sum = v;
    for (int n = 1; n < 200; ++n) {
      term = step * term / static_cast<double>(n);
      sum += term;
      if (term.norm() < 1e-18 * sum.norm()) break;
    }
    v = std::move(sum);
  }
  return v;
}

VecC FockSpace::displaced_squeezed(const VecC& alpha, const VecC& c, double r) const {
  SpMat b(dim_, dim_);
  for (int k = 0; k < modes_; ++k) b += c[k] * lowering_[k];
  const SpMat bd = b.adjoint();
  const SpMat squeeze = (0.5 * r) * (bd * bd - b * b);
  SpMat displace(dim_, dim_);
  for (int k = 0; k < modes_; ++k) {
    const SpMat ad = lowering_[k].adjoint();
    displace += alpha[k] * ad - std::conj(alpha[k]) * lowering_[k];
  }
  return apply_exp(displace, apply_exp(squeeze, vacuum()));
}

SpMat FockSpace::linear(const VecC& u) const {
  SpMat out(dim_, dim_);
  for (int k = 0; k < modes_; ++k) out += u[k] * lowering_[k];
  const SpMat adj = out.adjoint();
  return out + adj;
}

SpMat FockSpace::quadratic(const MatC& W, const VecC& alpha) const {
  const SpMat id = identity();
  std::vector<SpMat> shifted;
  for (int k = 0; k < modes_; ++k) shifted.push_back(lowering_[k] - alpha[k] * id);
  SpMat out(dim_, dim_);
  for (int j = 0; j < modes_; ++j) {
    const SpMat dj = shifted[j].adjoint();
    for (int k = 0; k < modes_; ++k) {
      if (W(j, k) != cplx(0.0)) out += W(j, k) * (dj * shifted[k]);
    }
  }
  return out;
}

double FockSpace::tail_weight(const VecC& psi, int margin) const {
  double tail = 0.0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    Eigen::Index rest = i;
    bool high = false;
    for (int k = 0; k < modes_; ++k) {
      if (rest % (cutoff_ + 1) > cutoff_ - margin) high = true;
      rest /= cutoff_ + 1;
    }
    if (high) tail += std::norm(psi[i]);
  }
  return tail / psi.squaredNorm();
}

PreparedState prepare_displaced_squeezed(const VecC& alpha, const VecC& c, double r,
                                         int min_cutoff, double tail_tolerance, int max_cutoff) {
  for (int cutoff = min_cutoff;; cutoff += 10) {
    FockSpace space(static_cast<int>(alpha.size()), cutoff);
    VecC psi = space.displaced_squeezed(alpha, c, r);
    if (space.tail_weight(psi, 3) < tail_tolerance || cutoff + 10 > max_cutoff) {
      return {std::move(space), std::move(psi)};
    }
  }
}

double expectation(const SpMat& A, const VecC& psi) {
  return std::real(psi.dot(A * psi)) / psi.squaredNorm();
}

double variance(const SpMat& A, const VecC& psi) {
  const VecC phi = psi / psi.norm();
  const VecC Aphi = A * phi;
  const double mean = std::real(phi.dot(Aphi));
  return Aphi.squaredNorm() - mean * mean;
}

}  // namespace qcrb::oracle
