#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcrb {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kPi = 3.14159265358979323846;

/// Coordinate values outside the chart on which a family or field is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation produced a non-finite value or could not reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input; `key()` names the offending configuration entry when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool open_lo = false;
  bool open_hi = false;

  bool contains(double v) const {
    const bool above = open_lo ? v > lo : v >= lo;
    const bool below = open_hi ? v < hi : v <= hi;
    return above && below;
  }
  double width() const { return hi - lo; }
};

inline Interval unbounded() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf, true, true};
}

/// Closed rectilinear box in chart coordinates.
struct CoordinateBox {
  std::array<double, 4> lo{};
  std::array<double, 4> hi{};

  bool contains(const Vec4& x, double slack = 0.0) const {
    for (int a = 0; a < 4; ++a) {
      if (x[a] < lo[a] - slack || x[a] > hi[a] + slack) return false;
    }
    return true;
  }
  bool nonempty() const {
    for (int a = 0; a < 4; ++a) {
      if (!(hi[a] > lo[a])) return false;
    }
    return true;
  }
  double volume() const {
    double v = 1.0;
    for (int a = 0; a < 4; ++a) v *= hi[a] - lo[a];
    return v;
  }
};

/// Per-axis open/closed intervals; a point is in the chart iff every coordinate is.
struct ChartDomain {
  std::array<Interval, 4> axes{unbounded(), unbounded(), unbounded(), unbounded()};

  bool contains(const Vec4& x) const {
    for (int a = 0; a < 4; ++a) {
      if (!axes[a].contains(x[a])) return false;
    }
    return true;
  }
  bool contains(const CoordinateBox& box) const {
    for (int a = 0; a < 4; ++a) {
      if (!axes[a].contains(box.lo[a]) || !axes[a].contains(box.hi[a])) return false;
    }
    return true;
  }
};

inline Mat4 minkowski() { return Vec4(-1.0, 1.0, 1.0, 1.0).asDiagonal(); }

inline double max_asymmetry(const Mat4& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

inline bool all_finite(const Mat4& m) { return m.allFinite(); }

}  // namespace qcrb
