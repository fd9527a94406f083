#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcrb/core/types.hpp"

namespace qcrb {

struct GridAxes {
  std::string chart = "cartesian";
  std::array<std::string, 4> names{"t", "x", "y", "z"};
  std::array<double, 4> origin{};
  std::array<double, 4> spacing{1.0, 1.0, 1.0, 1.0};
  std::array<int, 4> shape{2, 2, 2, 2};

  std::size_t point_count() const;
  CoordinateBox bounds() const;
};

/// Symmetric rank-2 tensor samples on a 4D rectilinear grid (index 0 slowest).
///
/// Text format (version 1), one header line per key, then one data row per
/// sample with the 4 coordinates followed by the 10 independent components
/// in the order of `component_names()`:
///
///   # qcrb tensor grid v1
///   chart <name>
///   axes <n0> <n1> <n2> <n3>
///   units <free text, e.g. G=c=1>
///   origin <x0> <x1> <x2> <x3>
///   spacing <h0> <h1> <h2> <h3>
///   shape <n0> <n1> <n2> <n3>
///   components T00 T01 T02 T03 T11 T12 T13 T22 T23 T33
///   data
///   <x0> <x1> <x2> <x3> <T00> ... <T33>
class TensorGrid {
 public:
  using Index = std::array<int, 4>;

  explicit TensorGrid(GridAxes axes);

  static TensorGrid tabulate(const GridAxes& axes, const std::function<Mat4(const Vec4&)>& f);

  const GridAxes& axes() const { return axes_; }
  std::string units = "G=c=1";

  Vec4 coordinate(const Index& i) const;
  Mat4 at(const Index& i) const;
  void set(const Index& i, const Mat4& t);

  /// Multilinear interpolation; DomainError outside the grid bounds.
  Mat4 interpolate(const Vec4& x) const;
  bool contains(const Vec4& x) const;

  std::size_t flat(const Index& i) const;
  Index unflatten(std::size_t k) const;

  void write(std::ostream& os) const;
  static TensorGrid read(std::istream& is);

  static const std::array<std::string, 10>& component_names();

 private:
  GridAxes axes_;
  std::vector<std::array<double, 10>> data_;
};

}  // namespace qcrb
