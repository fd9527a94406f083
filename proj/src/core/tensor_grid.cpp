#include "qcrb/core/tensor_grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace qcrb {

namespace {

constexpr std::array<std::array<int, 2>, 10> kPairs{{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1},
                                                     {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};

std::array<double, 10> pack(const Mat4& t) {
  std::array<double, 10> c{};
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const auto [a, b] = kPairs[k];
    c[k] = 0.5 * (t(a, b) + t(b, a));
  }
  return c;
}

Mat4 unpack(const std::array<double, 10>& c) {
  Mat4 t;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const auto [a, b] = kPairs[k];
    t(a, b) = c[k];
    t(b, a) = c[k];
  }
  return t;
}

template <std::size_t N, typename T>
std::array<T, N> read_array(std::istringstream& line, const std::string& key) {
  std::array<T, N> out{};
  for (auto& v : out) {
    if (!(line >> v)) throw ConfigError("grid." + key, "expected " + std::to_string(N) + " values");
  }
  return out;
}

}  // namespace

std::size_t GridAxes::point_count() const {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

CoordinateBox GridAxes::bounds() const {
  CoordinateBox b;
  for (int a = 0; a < 4; ++a) {
    b.lo[a] = origin[a];
    b.hi[a] = origin[a] + spacing[a] * (shape[a] - 1);
  }
  return b;
}

TensorGrid::TensorGrid(GridAxes axes) : axes_(std::move(axes)) {
  for (int a = 0; a < 4; ++a) {
    if (axes_.shape[a] < 1) throw ConfigError("grid.shape", "every axis needs at least one sample");
    if (!(axes_.spacing[a] > 0.0)) throw ConfigError("grid.spacing", "spacings must be positive");
  }
  data_.assign(axes_.point_count(), std::array<double, 10>{});
}

TensorGrid TensorGrid::tabulate(const GridAxes& axes, const std::function<Mat4(const Vec4&)>& f) {
  TensorGrid grid(axes);
  for (std::size_t k = 0; k < grid.data_.size(); ++k) {
    grid.data_[k] = pack(f(grid.coordinate(grid.unflatten(k))));
  }
  return grid;
}

std::size_t TensorGrid::flat(const Index& i) const {
  std::size_t k = 0;
  for (int a = 0; a < 4; ++a) k = k * axes_.shape[a] + i[a];
  return k;
}

TensorGrid::Index TensorGrid::unflatten(std::size_t k) const {
  Index i{};
  for (int a = 3; a >= 0; --a) {
    i[a] = static_cast<int>(k % axes_.shape[a]);
    k /= axes_.shape[a];
  }
  return i;
}

Vec4 TensorGrid::coordinate(const Index& i) const {
  Vec4 x;
  for (int a = 0; a < 4; ++a) x[a] = axes_.origin[a] + axes_.spacing[a] * i[a];
  return x;
}

Mat4 TensorGrid::at(const Index& i) const { return unpack(data_[flat(i)]); }

void TensorGrid::set(const Index& i, const Mat4& t) { data_[flat(i)] = pack(t); }

bool TensorGrid::contains(const Vec4& x) const {
  return axes_.bounds().contains(x, 1e-12 * axes_.spacing[0]);
}

Mat4 TensorGrid::interpolate(const Vec4& x) const {
  Index base{};
  std::array<double, 4> frac{};
  for (int a = 0; a < 4; ++a) {
    const double u = (x[a] - axes_.origin[a]) / axes_.spacing[a];
    const int n = axes_.shape[a];
    if (u < -1e-9 || u > (n - 1) + 1e-9) {
      throw DomainError("tensor grid: point outside grid on axis " + axes_.names[a]);
    }
    if (n == 1) {
      base[a] = 0;
      frac[a] = 0.0;
      continue;
    }
    int i0 = static_cast<int>(std::floor(u));
    i0 = std::clamp(i0, 0, n - 2);
    base[a] = i0;
    frac[a] = std::clamp(u - i0, 0.0, 1.0);
  }
  Mat4 out = Mat4::Zero();
  for (int corner = 0; corner < 16; ++corner) {
    double w = 1.0;
    Index i = base;
    for (int a = 0; a < 4; ++a) {
      const bool up = (corner >> a) & 1;
      if (up && axes_.shape[a] == 1) {
        w = 0.0;
        break;
      }
      w *= up ? frac[a] : 1.0 - frac[a];
      i[a] += up ? 1 : 0;
    }
    if (w != 0.0) out += w * at(i);
  }
  return out;
}

const std::array<std::string, 10>& TensorGrid::component_names() {
  static const std::array<std::string, 10> names{"T00", "T01", "T02", "T03", "T11",
                                                 "T12", "T13", "T22", "T23", "T33"};
  return names;
}

void TensorGrid::write(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << "# qcrb tensor grid v1\n";
  os << "chart " << axes_.chart << "\n";
  os << "axes";
  for (const auto& n : axes_.names) os << ' ' << n;
  os << "\nunits " << units << "\n";
  os << "origin";
  for (double v : axes_.origin) os << ' ' << v;
  os << "\nspacing";
  for (double v : axes_.spacing) os << ' ' << v;
  os << "\nshape";
  for (int v : axes_.shape) os << ' ' << v;
  os << "\ncomponents";
  for (const auto& n : component_names()) os << ' ' << n;
  os << "\ndata\n";
  for (std::size_t k = 0; k < data_.size(); ++k) {
    const Vec4 x = coordinate(unflatten(k));
    os << x[0] << ' ' << x[1] << ' ' << x[2] << ' ' << x[3];
    for (double c : data_[k]) os << ' ' << c;
    os << '\n';
  }
  os.precision(old_precision);
}

TensorGrid TensorGrid::read(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# qcrb tensor grid v1", 0) != 0) {
    throw ConfigError("grid", "missing '# qcrb tensor grid v1' header");
  }
  GridAxes axes;
  std::string units = "G=c=1";
  bool have_origin = false, have_spacing = false, have_shape = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "data") break;
    if (key == "chart") {
      ls >> axes.chart;
    } else if (key == "axes") {
      axes.names = read_array<4, std::string>(ls, key);
    } else if (key == "units") {
      std::getline(ls >> std::ws, units);
    } else if (key == "origin") {
      axes.origin = read_array<4, double>(ls, key);
      have_origin = true;
    } else if (key == "spacing") {
      axes.spacing = read_array<4, double>(ls, key);
      have_spacing = true;
    } else if (key == "shape") {
      axes.shape = read_array<4, int>(ls, key);
      have_shape = true;
    } else if (key == "components") {
      const auto names = read_array<10, std::string>(ls, key);
      if (names != component_names()) {
        throw ConfigError("grid.components", "expected T00 T01 T02 T03 T11 T12 T13 T22 T23 T33");
      }
    } else {
      throw ConfigError("grid." + key, "unknown header key");
    }
  }
  if (!have_origin || !have_spacing || !have_shape) {
    throw ConfigError("grid", "header requires origin, spacing and shape");
  }
  TensorGrid grid(axes);
  grid.units = units;
  for (std::size_t k = 0; k < grid.data_.size(); ++k) {
    std::array<double, 14> row{};
    for (double& v : row) {
      if (!(is >> v)) {
        throw ConfigError("grid.data", "expected " + std::to_string(grid.data_.size()) +
                                           " rows of 14 numbers, stopped at row " +
                                           std::to_string(k));
      }
    }
    const Vec4 expect = grid.coordinate(grid.unflatten(k));
    for (int a = 0; a < 4; ++a) {
      const double tol = 1e-9 * std::max(1.0, std::abs(expect[a])) + 1e-9 * axes.spacing[a];
      if (std::abs(row[a] - expect[a]) > tol) {
        throw ConfigError("grid.data", "row " + std::to_string(k) +
                                           " coordinates do not match origin/spacing/shape");
      }
    }
    std::copy(row.begin() + 4, row.end(), grid.data_[k].begin());
  }
  return grid;
}

}  // namespace qcrb
