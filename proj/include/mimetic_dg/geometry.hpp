#ifndef MIMETIC_DG_GEOMETRY_HPP_
#define MIMETIC_DG_GEOMETRY_HPP_

#include <array>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mimetic_dg/mimetic.hpp"
#include "mimetic_dg/polybasis.hpp"

namespace mdg {

/// jac[m][j] = d x_m / d xi_j
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Smooth map from reference coordinates to physical space.
class Mapping3D {
 public:
  virtual ~Mapping3D() = default;
  virtual Vec3 evaluate(const Point3& xi) const = 0;
  virtual Mat3 jacobian(const Point3& xi) const = 0;
};

class IdentityMap final : public Mapping3D {
 public:
  Vec3 evaluate(const Point3& xi) const override { return xi; }
  Mat3 jacobian(const Point3&) const override;
};

/// x = A xi + b
class AffineMap final : public Mapping3D {
 public:
  AffineMap(Mat3 a, Vec3 b) : a_(a), b_(b) {}
  Vec3 evaluate(const Point3& xi) const override;
  Mat3 jacobian(const Point3&) const override { return a_; }

 private:
  Mat3 a_;
  Vec3 b_;
};

/// x = xi + A cos(pi xi) cos(pi eta) cos(pi zeta) (1, 1, 1)^T
class WarpedCosineMap final : public Mapping3D {
 public:
  explicit WarpedCosineMap(double amplitude = 0.1) : amplitude_(amplitude) {}
  double amplitude() const { return amplitude_; }
  Vec3 evaluate(const Point3& xi) const override;
  Mat3 jacobian(const Point3& xi) const override;

 private:
  double amplitude_;
};

/// Composition of a global map with the affine pre-map of one element:
/// global reference coordinate = offset + scale * (local + 1).
class ElementMapping final : public Mapping3D {
 public:
  ElementMapping(std::shared_ptr<const Mapping3D> global, Vec3 offset, Vec3 scale)
      : global_(std::move(global)), offset_(offset), scale_(scale) {}
  Point3 to_global_reference(const Point3& local) const;
  Vec3 evaluate(const Point3& xi) const override;
  Mat3 jacobian(const Point3& xi) const override;

 private:
  std::shared_ptr<const Mapping3D> global_;
  Vec3 offset_;
  Vec3 scale_;
};

/// Nine metric entries ja[i][n] = Ja^i_n and the Jacobian determinant.
struct MetricValues {
  Mat3 ja{};
  double jac = 0.0;
};

/// Ja^1 = x_eta x x_zeta, Ja^2 = x_zeta x x_xi, Ja^3 = x_xi x x_eta.
MetricValues analytic_metrics(const Mapping3D& map, const Point3& xi);
MetricValues metrics_from_jacobian(const Mat3& jac);

/// Nodal metric terms of one element: ja[i][n] = Ja^i_n and J.
struct MetricSet {
  int degree = 0;
  std::array<std::array<NodalScalar3D, 3>, 3> ja;
  NodalScalar3D jac;

  /// (Ja^1_n, Ja^2_n, Ja^3_n): the vector whose divergence must vanish.
  NodalVector3D row(int n) const;
  /// Ja^i as a Cartesian vector field.
  NodalVector3D contravariant(int i) const;
  double ja_max_abs() const;
};

/// Face f = 2*d + s: direction d, s = 0 for the xi_d = -1 side and 1 for +1.
struct FaceNeighbor {
  int element;
  int face;
};

/**
 * Conforming Cartesian-topology mesh of the global reference cube [-1, 1]^3.
 * Periodic in every direction flagged periodic; element index runs
 * fastest along direction 0.
 */
class Mesh3D {
 public:
  Mesh3D(std::array<int, 3> elements, std::shared_ptr<const Mapping3D> global,
         std::array<bool, 3> periodic = {true, true, true});

  const std::array<int, 3>& elements_per_direction() const { return dims_; }
  int element_count() const { return dims_[0] * dims_[1] * dims_[2]; }
  const Mapping3D& global_mapping() const { return *global_; }
  std::shared_ptr<const Mapping3D> global_mapping_ptr() const { return global_; }
  const std::array<bool, 3>& periodic() const { return periodic_; }

  std::array<int, 3> element_coords(int element) const;
  int element_index(std::array<int, 3> coords) const;

  ElementMapping element_mapping(int element) const;

  /// Neighbor across a face; element = -1 on a non-periodic boundary.
  FaceNeighbor neighbor(int element, int face) const;

 private:
  void check_element(int element) const;

  std::array<int, 3> dims_;
  std::shared_ptr<const Mapping3D> global_;
  std::array<bool, 3> periodic_;
};

ElementMapping element_mapping(const Mesh3D& mesh, int element);

/// Nodal values of x, y, z at the element's LGL grid.
std::array<NodalScalar3D, 3> interpolated_geometry(const Mapping3D& map, const QuadRule1D& rule);

enum class GeometryPathway { Interpolated, Analytic };

/**
 * @brief Samples coordinates and their derivatives on tensor grids.
 *
 * With the interpolated pathway the geometry is the degree-N nodal
 * interpolant and off-node values come from exact Lagrange (derivative)
 * interpolation; with the analytic pathway the mapping is evaluated directly.
 */
class GeometrySampler {
 public:
  GeometrySampler(const Mapping3D& map, const QuadRule1D& rule, GeometryPathway pathway);

  GeometryPathway pathway() const { return pathway_; }
  const std::array<NodalScalar3D, 3>& nodal() const { return nodal_; }

  /// x_m on the grid.
  TensorArray coordinate(int m, const TensorGrid& grid) const;
  /// d x_m / d xi_j on the grid.
  TensorArray derivative(int m, int j, const TensorGrid& grid) const;

 private:
  const Mapping3D* map_;
  const QuadRule1D* rule_;
  GeometryPathway pathway_;
  std::array<NodalScalar3D, 3> nodal_;
};

/// 2D maps for the planar metric identities.
using Point2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

class Mapping2D {
 public:
  virtual ~Mapping2D() = default;
  virtual Point2 evaluate(const Point2& xi) const = 0;
  virtual Mat2 jacobian(const Point2& xi) const = 0;
};

class AffineMap2D final : public Mapping2D {
 public:
  AffineMap2D(Mat2 a, Point2 b) : a_(a), b_(b) {}
  Point2 evaluate(const Point2& xi) const override;
  Mat2 jacobian(const Point2&) const override { return a_; }

 private:
  Mat2 a_;
  Point2 b_;
};

/// x = xi + A cos(pi xi) cos(pi eta) (1, 1)^T
class WarpedCosineMap2D final : public Mapping2D {
 public:
  explicit WarpedCosineMap2D(double amplitude = 0.1) : amplitude_(amplitude) {}
  Point2 evaluate(const Point2& xi) const override;
  Mat2 jacobian(const Point2& xi) const override;

 private:
  double amplitude_;
};

}  // namespace mdg

#endif  // MIMETIC_DG_GEOMETRY_HPP_
