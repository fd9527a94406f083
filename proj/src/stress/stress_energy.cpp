#include "qcrb/stress/stress_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcrb {

Mat4 em_stress_tensor(const EMField& f) {
  const double e2 = f.E.squaredNorm();
  const double b2 = f.B.squaredNorm();
  const Vec3 poynting = f.E.cross(f.B) / (4.0 * kPi);
  Mat4 t;
  t(0, 0) = (e2 + b2) / (8.0 * kPi);
  for (int i = 0; i < 3; ++i) {
    t(0, i + 1) = poynting[i];
    t(i + 1, 0) = poynting[i];
    for (int j = 0; j < 3; ++j) {
      const double iso = i == j ? (e2 + b2) / (8.0 * kPi) : 0.0;
      t(i + 1, j + 1) = iso - (f.E[i] * f.E[j] + f.B[i] * f.B[j]) / (4.0 * kPi);
    }
  }
  return t;
}

Mat4 em_stress_tensor(const EMFieldConfig& fields, const Vec4& x) {
  return em_stress_tensor(fields(x));
}

EMFieldConfig plane_wave_along_x(std::function<double(double, double)> waveform) {
  return [w = std::move(waveform)](const Vec4& x) {
    const double e1 = w(x[0], x[1]);
    EMField f;
    f.E[1] = e1;
    f.B[2] = e1;
    return f;
  };
}

Mat4 dust_tensor(double rho, const Vec4& u) { return rho * u * u.transpose(); }

StressEnergyField::StressEnergyField(std::string label, Sampler sampler)
    : label_(std::move(label)), sampler_(std::move(sampler)) {}

StressEnergyField StressEnergyField::from_em(EMFieldConfig fields, std::string label) {
  return StressEnergyField(std::move(label),
                           [f = std::move(fields)](const Vec4& x) { return em_stress_tensor(f, x); });
}

StressEnergyField StressEnergyField::em_on_diagonal_metric(EMFieldConfig frame_fields,
                                                           MetricEvaluator metric,
                                                           std::string label) {
  return StressEnergyField(std::move(label), [f = std::move(frame_fields),
                                              g = std::move(metric)](const Vec4& x) {
    const Mat4 gm = g(x);
    Vec4 inv_len;
    for (int a = 0; a < 4; ++a) {
      const double off = gm.row(a).cwiseAbs().sum() - std::abs(gm(a, a));
      if (off > 1e-14 * std::abs(gm(a, a))) {
        throw DomainError("em_on_diagonal_metric: metric is not diagonal");
      }
      inv_len[a] = 1.0 / std::sqrt(std::abs(gm(a, a)));
    }
    const Mat4 frame = em_stress_tensor(f(x));
    return Mat4(inv_len.asDiagonal() * frame * inv_len.asDiagonal());
  });
}

StressEnergyField StressEnergyField::from_grid(TensorGrid grid, std::string label) {
  auto shared = std::make_shared<const TensorGrid>(std::move(grid));
  StressEnergyField field(std::move(label),
                          [shared](const Vec4& x) { return shared->interpolate(x); });
  field.grid_ = shared;
  return field;
}

Mat4 StressEnergyField::at(const Vec4& x) const { return sampler_(x); }

double trace(const StressEnergyField& T, const MetricEvaluator& g, const Vec4& x) {
  return g(x).cwiseProduct(T.at(x)).sum();
}

namespace {

template <typename F>
auto central_difference(const F& f, const Vec4& x, int axis, double h, int order) {
  Vec4 e = Vec4::Zero();
  e[axis] = h;
  if (order == 4) {
    return decltype(f(x))((-f(x + 2.0 * e) + 8.0 * f(x + e) - 8.0 * f(x - e) + f(x - 2.0 * e)) /
                          (12.0 * h));
  }
  return decltype(f(x))((f(x + e) - f(x - e)) / (2.0 * h));
}

void check_order(int order) {
  if (order != 2 && order != 4) throw ConfigError("stencil.order", "must be 2 or 4");
}

}  // namespace

std::array<Mat4, 4> christoffel_symbols(const MetricEvaluator& g, const Vec4& x,
                                        const StencilOptions& opts) {
  check_order(opts.order);
  std::array<Mat4, 4> dg;  // dg[c](a, b) = d_c g_ab
  for (int c = 0; c < 4; ++c) dg[c] = central_difference(g, x, c, opts.step[c], opts.order);
  const Mat4 ginv = g(x).inverse();
  std::array<Mat4, 4> gamma;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = b; c < 4; ++c) {
        double s = 0.0;
        for (int d = 0; d < 4; ++d) {
          s += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        }
        gamma[a](b, c) = 0.5 * s;
        gamma[a](c, b) = 0.5 * s;
      }
    }
  }
  return gamma;
}

Vec4 covariant_divergence(const StressEnergyField& T, const MetricEvaluator& g, const Vec4& x,
                          StencilOptions opts) {
  check_order(opts.order);
  if (const TensorGrid* grid = T.grid()) {
    const CoordinateBox b = grid->axes().bounds();
    const int reach = opts.order / 2;
    for (int a = 0; a < 4; ++a) {
      opts.step[a] = grid->axes().spacing[a];
      const double margin = reach * opts.step[a] * (1.0 - 1e-9);
      if (x[a] - margin < b.lo[a] || x[a] + margin > b.hi[a]) {
        throw DomainError("covariant_divergence: stencil out of grid bounds on axis " +
                          grid->axes().names[a]);
      }
    }
  }
  auto sample = [&T](const Vec4& y) { return T.at(y); };
  Vec4 div = Vec4::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    const Mat4 dT = central_difference(sample, x, mu, opts.step[mu], opts.order);
    div += dT.row(mu).transpose();
  }
  const Mat4 t = T.at(x);
  const auto gamma = christoffel_symbols(g, x, opts);
  for (int nu = 0; nu < 4; ++nu) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      for (int lam = 0; lam < 4; ++lam) {
        s += gamma[mu](mu, lam) * t(lam, nu);
        s += gamma[nu](mu, lam) * t(mu, lam);
      }
    }
    div[nu] += s;
  }
  return div;
}

SupportRegion support_region(const TensorGrid& grid, double tol) {
  if (!(tol > 0.0)) throw ConfigError("support.tol", "must be positive");
  const std::size_t n = grid.axes().point_count();
  double global = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    global = std::max(global, grid.at(grid.unflatten(k)).cwiseAbs().maxCoeff());
  }
  SupportRegion region;
  if (global == 0.0) return region;
  std::array<int, 4> lo{}, hi{};
  lo.fill(std::numeric_limits<int>::max());
  hi.fill(-1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = grid.unflatten(k);
    if (grid.at(idx).cwiseAbs().maxCoeff() > tol * global) {
      for (int a = 0; a < 4; ++a) {
        lo[a] = std::min(lo[a], idx[a]);
        hi[a] = std::max(hi[a], idx[a]);
      }
    }
  }
  region.empty = false;
  const Vec4 xlo = grid.coordinate(lo);
  const Vec4 xhi = grid.coordinate(hi);
  for (int a = 0; a < 4; ++a) {
    region.box.lo[a] = xlo[a];
    region.box.hi[a] = xhi[a];
  }
  return region;
}

SupportRegion support_region(const StressEnergyField& T, double tol) {
  if (!T.grid()) {
    throw ConfigError("stress_energy", "support_region needs a tabulated field; tabulate first");
  }
  return support_region(*T.grid(), tol);
}

}  // namespace qcrb
