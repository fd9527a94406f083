#pragma once

#include <array>

#include "qcrb/core/types.hpp"

namespace qcrb {

enum class ProfileKind { Smoothstep, Mollifier };

/// Separable localization profile chi(x) = prod_a s_a(x^a).
///
/// On each restricted axis the factor is 1 on [plateau.lo, plateau.hi], 0
/// outside [support.lo, support.hi], and rises/falls through a smooth step
/// in between. Unrestricted axes (e.g. angular coordinates that cover their
/// whole range) contribute a factor of 1.
class BumpProfile {
 public:
  BumpProfile(CoordinateBox plateau, CoordinateBox support, ProfileKind kind, int order = 3,
              std::array<bool, 4> restricted = {true, true, true, true});

  double value(const Vec4& x) const;
  double axis_factor(int axis, double v) const;

  bool on_plateau(const Vec4& x) const;
  bool in_support(const Vec4& x) const;

  const CoordinateBox& plateau() const { return plateau_; }
  const CoordinateBox& support() const { return support_; }
  ProfileKind kind() const { return kind_; }
  int order() const { return order_; }
  bool restricted(int axis) const { return restricted_[axis]; }

  /// Transition from 0 at u<=0 to 1 at u>=1.
  double step(double u) const;

  /// Polynomial smoothstep S_k, C^k at both ends, S_k(1-u) = 1 - S_k(u).
  static double smoothstep(int order, double u);
  /// Normalized running integral of exp(-1/(1-v^2)) over v in (-1, 2u-1]; C-infinity.
  static double mollifier_step(double u);

 private:
  CoordinateBox plateau_;
  CoordinateBox support_;
  ProfileKind kind_;
  int order_;
  std::array<bool, 4> restricted_;
};

}  // namespace qcrb
