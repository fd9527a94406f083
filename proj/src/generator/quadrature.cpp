#include "qcrb/generator/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

namespace qcrb {

namespace {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  x.clear();
  w.clear();
  auto weight = [n](double z) {
    const double dp = boost::math::legendre_p_prime(n, z);
    return 2.0 / ((1.0 - z * z) * dp * dp);
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it == 0.0) continue;
    x.push_back(-*it);
    w.push_back(weight(*it));
  }
  for (double z : zeros) {
    x.push_back(z);
    w.push_back(weight(z));
  }
}

}  // namespace

void RegionSpec::validate() const {
  if (!box.nonempty()) throw ConfigError("region.box", "every axis needs hi > lo");
  for (int a = 0; a < 4; ++a) {
    if (resolution[a] < 2) {
      throw ConfigError("region.resolution", "need at least 2 per axis, axis " + std::to_string(a) +
                                                 " has " + std::to_string(resolution[a]));
    }
  }
  if (rule == QuadratureRule::GaussLegendre && (points_per_panel < 1 || points_per_panel > 64)) {
    throw ConfigError("region.points_per_panel", "must be in 1..64");
  }
}

int RegionSpec::order() const {
  return rule == QuadratureRule::Trapezoid ? 2 : 2 * points_per_panel;
}

RegionSpec RegionSpec::scaled(double factor) const {
  if (!(factor > 0.0)) throw ConfigError("resolution", "multiplier must be positive");
  RegionSpec out = *this;
  for (int& n : out.resolution) n = std::max(1, static_cast<int>(std::lround(n * factor)));
  return out;
}

AxisNodes axis_nodes(const RegionSpec& region, int axis) {
  const double lo = region.box.lo[axis];
  const double hi = region.box.hi[axis];
  const int n = region.resolution[axis];
  const double h = (hi - lo) / n;
  AxisNodes out;
  if (region.rule == QuadratureRule::Trapezoid) {
    out.x.resize(n + 1);
    out.w.assign(n + 1, h);
    for (int i = 0; i <= n; ++i) out.x[i] = lo + h * i;
    out.x[n] = hi;
    out.w.front() = 0.5 * h;
    out.w.back() = 0.5 * h;
    return out;
  }
  std::vector<double> gx, gw;
  if (region.points_per_panel == 1) {
    gx = {0.0};
    gw = {2.0};
  } else {
    gauss_legendre(region.points_per_panel, gx, gw);
  }
  out.x.reserve(static_cast<std::size_t>(n) * gx.size());
  out.w.reserve(out.x.capacity());
  for (int p = 0; p < n; ++p) {
    const double mid = lo + h * (p + 0.5);
    for (std::size_t q = 0; q < gx.size(); ++q) {
      out.x.push_back(mid + 0.5 * h * gx[q]);
      out.w.push_back(0.5 * h * gw[q]);
    }
  }
  return out;
}

}  // namespace qcrb
