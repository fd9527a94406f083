#include "qcrb/metric/bump.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace qcrb {

namespace {

double mollifier_kernel(double v) {
  const double s = 1.0 - v * v;
  return s <= 0.0 ? 0.0 : std::exp(-1.0 / s);
}

double mollifier_integral(double lo, double hi) {
  return boost::math::quadrature::gauss<double, 30>::integrate(mollifier_kernel, lo, hi);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

BumpProfile::BumpProfile(CoordinateBox plateau, CoordinateBox support, ProfileKind kind,
                         int order, std::array<bool, 4> restricted)
    : plateau_(plateau), support_(support), kind_(kind), order_(order), restricted_(restricted) {
  if (kind_ == ProfileKind::Smoothstep && (order_ < 0 || order_ > 12)) {
    throw ConfigError("bump.order", "smoothstep order must be in [0, 12]");
  }
  for (int a = 0; a < 4; ++a) {
    if (!restricted_[a]) continue;
    if (!(support_.lo[a] < plateau_.lo[a] && plateau_.lo[a] <= plateau_.hi[a] &&
          plateau_.hi[a] < support_.hi[a])) {
      throw ConfigError("bump", "plateau must lie strictly inside support on axis " +
                                    std::to_string(a));
    }
  }
}

double BumpProfile::smoothstep(int order, double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  // S_N(u) = u^{N+1} sum_{n=0}^{N} C(N+n, n) C(2N+1, N-n) (-u)^n
  double acc = 0.0;
  double pw = 1.0;
  for (int n = 0; n <= order; ++n) {
    acc += binomial(order + n, n) * binomial(2 * order + 1, order - n) * pw;
    pw *= -u;
  }
  return std::pow(u, order + 1) * acc;
}

double BumpProfile::mollifier_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  static const double half = mollifier_integral(-1.0, 0.0);
  if (u <= 0.5) return mollifier_integral(-1.0, 2.0 * u - 1.0) / (2.0 * half);
  return 1.0 - mollifier_integral(-1.0, 1.0 - 2.0 * u) / (2.0 * half);
}

double BumpProfile::step(double u) const {
  return kind_ == ProfileKind::Smoothstep ? smoothstep(order_, u) : mollifier_step(u);
}

double BumpProfile::axis_factor(int a, double v) const {
  if (!restricted_[a]) return 1.0;
  if (v <= support_.lo[a] || v >= support_.hi[a]) return 0.0;
  if (v >= plateau_.lo[a] && v <= plateau_.hi[a]) return 1.0;
  if (v < plateau_.lo[a]) return step((v - support_.lo[a]) / (plateau_.lo[a] - support_.lo[a]));
  return step((support_.hi[a] - v) / (support_.hi[a] - plateau_.hi[a]));
}

double BumpProfile::value(const Vec4& x) const {
  double chi = 1.0;
  for (int a = 0; a < 4 && chi != 0.0; ++a) chi *= axis_factor(a, x[a]);
  return chi;
}

bool BumpProfile::on_plateau(const Vec4& x) const {
  for (int a = 0; a < 4; ++a) {
    if (restricted_[a] && (x[a] < plateau_.lo[a] || x[a] > plateau_.hi[a])) return false;
  }
  return true;
}

bool BumpProfile::in_support(const Vec4& x) const {
  for (int a = 0; a < 4; ++a) {
    if (restricted_[a] && (x[a] <= support_.lo[a] || x[a] >= support_.hi[a])) return false;
  }
  return true;
}

}  // namespace qcrb
