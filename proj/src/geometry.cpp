#include "mimetic_dg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mdg {

Mat3 IdentityMap::jacobian(const Point3&) const {
  return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
}

Vec3 AffineMap::evaluate(const Point3& xi) const {
  Vec3 x = b_;
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t j = 0; j < 3; ++j) x[m] += a_[m][j] * xi[j];
  return x;
}

Vec3 WarpedCosineMap::evaluate(const Point3& xi) const {
  constexpr double pi = std::numbers::pi;
  const double theta =
      amplitude_ * std::cos(pi * xi[0]) * std::cos(pi * xi[1]) * std::cos(pi * xi[2]);
  return {xi[0] + theta, xi[1] + theta, xi[2] + theta};
}

Mat3 WarpedCosineMap::jacobian(const Point3& xi) const {
  constexpr double pi = std::numbers::pi;
  const double c0 = std::cos(pi * xi[0]), s0 = std::sin(pi * xi[0]);
  const double c1 = std::cos(pi * xi[1]), s1 = std::sin(pi * xi[1]);
  const double c2 = std::cos(pi * xi[2]), s2 = std::sin(pi * xi[2]);
  const std::array<double, 3> dtheta{-amplitude_ * pi * s0 * c1 * c2,
                                     -amplitude_ * pi * c0 * s1 * c2,
                                     -amplitude_ * pi * c0 * c1 * s2};
  Mat3 jac{};
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t j = 0; j < 3; ++j) jac[m][j] = (m == j ? 1.0 : 0.0) + dtheta[j];
  return jac;
}

Point3 ElementMapping::to_global_reference(const Point3& local) const {
  return {offset_[0] + scale_[0] * (local[0] + 1.0), offset_[1] + scale_[1] * (local[1] + 1.0),
          offset_[2] + scale_[2] * (local[2] + 1.0)};
}

Vec3 ElementMapping::evaluate(const Point3& xi) const {
  return global_->evaluate(to_global_reference(xi));
}

Mat3 ElementMapping::jacobian(const Point3& xi) const {
  Mat3 jac = global_->jacobian(to_global_reference(xi));
  for (auto& row : jac)
    for (std::size_t j = 0; j < 3; ++j) row[j] *= scale_[j];
  return jac;
}

MetricValues metrics_from_jacobian(const Mat3& jac) {
  auto column = [&](std::size_t j) { return Vec3{jac[0][j], jac[1][j], jac[2][j]}; };
  auto cross = [](const Vec3& a, const Vec3& b) {
    return Vec3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  MetricValues mv;
  for (std::size_t i = 0; i < 3; ++i) mv.ja[i] = cross(column((i + 1) % 3), column((i + 2) % 3));
  const Vec3 x_xi = column(0);
  mv.jac = x_xi[0] * mv.ja[0][0] + x_xi[1] * mv.ja[0][1] + x_xi[2] * mv.ja[0][2];
  return mv;
}

MetricValues analytic_metrics(const Mapping3D& map, const Point3& xi) {
  return metrics_from_jacobian(map.jacobian(xi));
}

NodalVector3D MetricSet::row(int n) const {
  const auto nn = static_cast<std::size_t>(n);
  return {ja[0][nn], ja[1][nn], ja[2][nn]};
}

NodalVector3D MetricSet::contravariant(int i) const {
  const auto ii = static_cast<std::size_t>(i);
  return {ja[ii][0], ja[ii][1], ja[ii][2]};
}

double MetricSet::ja_max_abs() const {
  double m = 0.0;
  for (const auto& r : ja)
    for (const auto& e : r) m = std::max(m, e.max_abs());
  return m;
}

Mesh3D::Mesh3D(std::array<int, 3> elements, std::shared_ptr<const Mapping3D> global,
               std::array<bool, 3> periodic)
    : dims_(elements), global_(std::move(global)), periodic_(periodic) {
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("Mesh3D: need at least one element per direction");
  }
  if (!global_) throw std::invalid_argument("Mesh3D: global mapping is null");
}

void Mesh3D::check_element(int element) const {
  if (element < 0 || element >= element_count()) {
    throw std::out_of_range("element index " + std::to_string(element) + " outside 0.." +
                            std::to_string(element_count() - 1));
  }
}

std::array<int, 3> Mesh3D::element_coords(int element) const {
  check_element(element);
  return {element % dims_[0], (element / dims_[0]) % dims_[1], element / (dims_[0] * dims_[1])};
}

int Mesh3D::element_index(std::array<int, 3> c) const {
  return c[0] + dims_[0] * (c[1] + dims_[1] * c[2]);
}

ElementMapping Mesh3D::element_mapping(int element) const {
  const auto c = element_coords(element);
  Vec3 offset{}, scale{};
  for (std::size_t d = 0; d < 3; ++d) {
    const double h = 2.0 / dims_[d];
    offset[d] = -1.0 + h * c[d];
    scale[d] = 0.5 * h;
  }
  return ElementMapping(global_, offset, scale);
}

FaceNeighbor Mesh3D::neighbor(int element, int face) const {
  if (face < 0 || face > 5) throw std::out_of_range("face index must be in 0..5");
  auto c = element_coords(element);
  const auto d = static_cast<std::size_t>(face / 2);
  const int step = (face % 2 == 0) ? -1 : 1;
  int next = c[d] + step;
  if (next < 0 || next >= dims_[d]) {
    if (!periodic_[d]) return {-1, -1};
    next = (next + dims_[d]) % dims_[d];
  }
  c[d] = next;
  return {element_index(c), face ^ 1};
}

ElementMapping element_mapping(const Mesh3D& mesh, int element) {
  return mesh.element_mapping(element);
}

std::array<NodalScalar3D, 3> interpolated_geometry(const Mapping3D& map, const QuadRule1D& rule) {
  const int n = rule.degree();
  std::array<NodalScalar3D, 3> x{NodalScalar3D(n), NodalScalar3D(n), NodalScalar3D(n)};
  const auto& nodes = rule.nodes();
  const std::size_t np = rule.size();
  for (std::size_t k = 0; k < np; ++k)
    for (std::size_t j = 0; j < np; ++j)
      for (std::size_t i = 0; i < np; ++i) {
        const Vec3 p = map.evaluate({nodes[i], nodes[j], nodes[k]});
        for (std::size_t m = 0; m < 3; ++m) x[m](i, j, k) = p[m];
      }
  return x;
}

GeometrySampler::GeometrySampler(const Mapping3D& map, const QuadRule1D& rule,
                                 GeometryPathway pathway)
    : map_(&map), rule_(&rule), pathway_(pathway), nodal_(interpolated_geometry(map, rule)) {}

namespace {

template <class F>
TensorArray sample_pointwise(const TensorGrid& g, F&& f) {
  TensorArray out(g.dims());
  for (std::size_t k = 0; k < g.axes[2].size(); ++k)
    for (std::size_t j = 0; j < g.axes[1].size(); ++j)
      for (std::size_t i = 0; i < g.axes[0].size(); ++i)
        out(i, j, k) = f(Point3{g.axes[0][i], g.axes[1][j], g.axes[2][k]});
  return out;
}

}  // namespace

TensorArray GeometrySampler::coordinate(int m, const TensorGrid& grid) const {
  const auto mm = static_cast<std::size_t>(m);
  if (pathway_ == GeometryPathway::Analytic) {
    return sample_pointwise(grid, [&](const Point3& p) { return map_->evaluate(p)[mm]; });
  }
  return apply_tensor(lagrange_interp_matrix(*rule_, grid.axes[0]),
                      lagrange_interp_matrix(*rule_, grid.axes[1]),
                      lagrange_interp_matrix(*rule_, grid.axes[2]), nodal_[mm], Summation::Extended);
}

TensorArray GeometrySampler::derivative(int m, int j, const TensorGrid& grid) const {
  const auto mm = static_cast<std::size_t>(m);
  const auto jj = static_cast<std::size_t>(j);
  if (pathway_ == GeometryPathway::Analytic) {
    return sample_pointwise(grid, [&](const Point3& p) { return map_->jacobian(p)[mm][jj]; });
  }
  // differentiate first, through the extended-precision matrix
  TensorArray out = apply_axis(lagrange_derivative_matrix_wide(*rule_, grid.axes[jj]), nodal_[mm], j);
  for (int d = 0; d < 3; ++d) {
    if (d == j) continue;
    out = apply_axis(lagrange_interp_matrix(*rule_, grid.axes[static_cast<std::size_t>(d)]), out, d,
                     Summation::Extended);
  }
  return out;
}

Point2 AffineMap2D::evaluate(const Point2& xi) const {
  return {a_[0][0] * xi[0] + a_[0][1] * xi[1] + b_[0], a_[1][0] * xi[0] + a_[1][1] * xi[1] + b_[1]};
}

Point2 WarpedCosineMap2D::evaluate(const Point2& xi) const {
  constexpr double pi = std::numbers::pi;
  const double theta = amplitude_ * std::cos(pi * xi[0]) * std::cos(pi * xi[1]);
  return {xi[0] + theta, xi[1] + theta};
}

Mat2 WarpedCosineMap2D::jacobian(const Point2& xi) const {
  constexpr double pi = std::numbers::pi;
  const double c0 = std::cos(pi * xi[0]), s0 = std::sin(pi * xi[0]);
  const double c1 = std::cos(pi * xi[1]), s1 = std::sin(pi * xi[1]);
  const double t0 = -amplitude_ * pi * s0 * c1;
  const double t1 = -amplitude_ * pi * c0 * s1;
  return {{{1.0 + t0, t1}, {t0, 1.0 + t1}}};
}

}  // namespace mdg
