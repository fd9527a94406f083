#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qcrb/core/summation.hpp"
#include "qcrb/core/types.hpp"

namespace qcrb {

enum class QuadratureRule { Trapezoid, GaussLegendre };

/// Rectilinear integration box with a tensor-product rule.
///
/// `resolution[a]` counts trapezoid intervals or Gauss-Legendre panels along
/// axis a. A one-point Gauss-Legendre panel is the midpoint rule.
struct RegionSpec {
  CoordinateBox box;
  QuadratureRule rule = QuadratureRule::Trapezoid;
  std::array<int, 4> resolution{32, 32, 32, 32};
  int points_per_panel = 1;

  /// Throws ConfigError for an empty box or resolution below 2.
  void validate() const;
  /// Convergence order of the composite rule for smooth integrands.
  int order() const;
  /// Same box and rule with every resolution multiplied by `factor` (rounded, at least 1).
  RegionSpec scaled(double factor) const;
};

struct AxisNodes {
  std::vector<double> x;
  std::vector<double> w;
};

AxisNodes axis_nodes(const RegionSpec& region, int axis);

/// Tensor-product quadrature of an N-channel integrand over the box with the
/// plain coordinate measure d^4x. Slices along axis 0 run in parallel; each
/// slice is summed with compensation and slices are combined in index order,
/// so the result does not depend on the thread count.
template <std::size_t N, typename F>
std::array<double, N> integrate_box(const RegionSpec& region, const F& f) {
  region.validate();
  std::array<AxisNodes, 4> nodes;
  for (int a = 0; a < 4; ++a) nodes[a] = axis_nodes(region, a);
  const std::size_t n0 = nodes[0].x.size();
  std::vector<std::array<double, N>> slices(n0);
  parallel_for(n0, [&](std::size_t i) {
    std::array<CompensatedSum, N> acc;
    Vec4 x;
    x[0] = nodes[0].x[i];
    for (std::size_t j = 0; j < nodes[1].x.size(); ++j) {
      x[1] = nodes[1].x[j];
      for (std::size_t k = 0; k < nodes[2].x.size(); ++k) {
        x[2] = nodes[2].x[k];
        const double wjk = nodes[1].w[j] * nodes[2].w[k];
        for (std::size_t l = 0; l < nodes[3].x.size(); ++l) {
          x[3] = nodes[3].x[l];
          const std::array<double, N> v = f(x);
          const double w = wjk * nodes[3].w[l];
          for (std::size_t c = 0; c < N; ++c) acc[c].add(w * v[c]);
        }
      }
    }
    for (std::size_t c = 0; c < N; ++c) slices[i][c] = nodes[0].w[i] * acc[c].value();
  });
  std::array<double, N> out{};
  for (std::size_t c = 0; c < N; ++c) {
    CompensatedSum s;
    for (const auto& slice : slices) s.add(slice[c]);
    out[c] = s.value();
  }
  return out;
}

/// Quadrature over the 3-face of `region.box` where axis `fixed` is held at `value`,
/// using the region's rule on the remaining axes.
template <std::size_t N, typename F>
std::array<double, N> integrate_face(const RegionSpec& region, int fixed, double value,
                                     const F& f) {
  std::array<AxisNodes, 4> nodes;
  for (int a = 0; a < 4; ++a) {
    if (a == fixed) {
      nodes[a].x = {value};
      nodes[a].w = {1.0};
    } else {
      nodes[a] = axis_nodes(region, a);
    }
  }
  std::array<CompensatedSum, N> acc;
  Vec4 x;
  for (std::size_t i = 0; i < nodes[0].x.size(); ++i) {
    x[0] = nodes[0].x[i];
    for (std::size_t j = 0; j < nodes[1].x.size(); ++j) {
      x[1] = nodes[1].x[j];
      for (std::size_t k = 0; k < nodes[2].x.size(); ++k) {
        x[2] = nodes[2].x[k];
        for (std::size_t l = 0; l < nodes[3].x.size(); ++l) {
          x[3] = nodes[3].x[l];
          const double w = nodes[0].w[i] * nodes[1].w[j] * nodes[2].w[k] * nodes[3].w[l];
          const std::array<double, N> v = f(x);
          for (std::size_t c = 0; c < N; ++c) acc[c].add(w * v[c]);
        }
      }
    }
  }
  std::array<double, N> out{};
  for (std::size_t c = 0; c < N; ++c) out[c] = acc[c].value();
  return out;
}

}  // namespace qcrb
