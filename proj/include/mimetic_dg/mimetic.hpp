#ifndef MIMETIC_DG_MIMETIC_HPP_
#define MIMETIC_DG_MIMETIC_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mimetic_dg/polybasis.hpp"

namespace mdg {

using Point3 = std::array<double, 3>;
using Vec3 = std::array<double, 3>;
using Dims3 = std::array<std::size_t, 3>;

/// Values on an n0 x n1 x n2 tensor grid, first index fastest.
class TensorArray {
 public:
  TensorArray() = default;
  explicit TensorArray(Dims3 dims, double fill = 0.0)
      : dims_(dims), data_(dims[0] * dims[1] * dims[2], fill) {}

  const Dims3& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return i + dims_[0] * (j + dims_[1] * k);
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[index(i, j, k)]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[index(i, j, k)];
  }
  double& operator[](std::size_t p) { return data_[p]; }
  double operator[](std::size_t p) const { return data_[p]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double max_abs() const;

 private:
  Dims3 dims_{0, 0, 0};
  std::vector<double> data_;
};

/// Extended accumulates every contraction in long double before rounding;
/// used where a result is differentiated again and rounding would be amplified.
enum class Summation { Plain, Extended };

/// out = A applied along `axis`: out(.., t, ..) = sum_m A(t, m) in(.., m, ..).
TensorArray apply_axis(const Matrix& a, const TensorArray& in, int axis,
                       Summation summation = Summation::Plain);
TensorArray apply_axis(const WideMatrix& a, const TensorArray& in, int axis);

/// Separable application of one matrix per axis (sum factorization).
TensorArray apply_tensor(const Matrix& a0, const Matrix& a1, const Matrix& a2,
                         const TensorArray& in, Summation summation = Summation::Plain);

/// A tensor grid: one list of 1D coordinates per reference direction.
struct TensorGrid {
  std::array<std::vector<double>, 3> axes;
  Dims3 dims() const { return {axes[0].size(), axes[1].size(), axes[2].size()}; }
};

/// Nodal values on the (N+1)^3 LGL grid of one element.
class NodalScalar3D : public TensorArray {
 public:
  NodalScalar3D() = default;
  explicit NodalScalar3D(int degree, double fill = 0.0);
  NodalScalar3D(int degree, TensorArray values);

  int degree() const { return degree_; }

 private:
  int degree_ = 0;
};

struct NodalVector3D {
  std::array<NodalScalar3D, 3> comp;

  NodalScalar3D& operator[](std::size_t d) { return comp[d]; }
  const NodalScalar3D& operator[](std::size_t d) const { return comp[d]; }
  int degree() const;
  double max_abs() const;
};

/// Sub-cell volume integrals, N^3 entries (degrees of freedom of V4).
class SubCellScalar3D : public TensorArray {
 public:
  SubCellScalar3D() = default;
  SubCellScalar3D(int degree, TensorArray values);
  int degree() const { return degree_; }

 private:
  int degree_ = 0;
};

/// Samples a scalar field on a tensor grid.
using ScalarSampler = std::function<TensorArray(const TensorGrid&)>;
/// Samples one Cartesian component of a vector field on a tensor grid.
using VectorSampler = std::function<TensorArray(int component, const TensorGrid&)>;

ScalarSampler pointwise_sampler(std::function<double(const Point3&)> f);
VectorSampler pointwise_sampler(std::function<Vec3(const Point3&)> f);

/**
 * @brief Commuting projections onto the discrete de Rham spaces V1..V4.
 *
 * p1 is nodal interpolation, p2 histopolates edge integrals along its own
 * direction, p3 histopolates face integrals in the two transverse directions
 * and p4 returns sub-cell integrals. p2 and p3 results are returned in nodal
 * form; every component has per-direction degree <= N so nothing is lost.
 */
class MimeticProjector {
 public:
  /// Composite: Q Gauss points in every sub-interval (Q = 0 picks N + 2).
  /// PolynomialExact: 2N + 1 Gauss points on [-1, 1] with sub-interval
  /// weights that integrate every polynomial of degree <= 2N exactly; valid
  /// only for integrands of that degree, e.g. products built from the
  /// interpolated geometry.
  enum class Sampling { Composite, PolynomialExact };

  explicit MimeticProjector(int degree, int points_per_interval = 0,
                            Sampling sampling = Sampling::Composite);

  int degree() const { return rule_.degree(); }
  const QuadRule1D& rule() const { return rule_; }
  const EdgeBasis1D& edges() const { return edges_; }
  const SubintervalQuadrature& subquad() const { return subquad_; }
  Sampling sampling() const { return sampling_; }
  /// Points sampled along integrated directions.
  const std::vector<double>& sample_points() const { return sample_points_; }

  /// Grid with integration sample points along directions flagged true, LGL nodes elsewhere.
  TensorGrid grid(std::array<bool, 3> subinterval_axes) const;

  NodalScalar3D p1(const ScalarSampler& f) const;
  NodalVector3D p2(const VectorSampler& f) const;
  NodalVector3D p3(const VectorSampler& f) const;
  SubCellScalar3D p4(const ScalarSampler& f) const;

  /// Exact sub-cell integrals of a nodal polynomial.
  SubCellScalar3D subcell_integrals(const NodalScalar3D& s) const;

 private:
  QuadRule1D rule_;
  EdgeBasis1D edges_;
  SubintervalQuadrature subquad_;
  Sampling sampling_;
  std::vector<double> sample_points_;
  Matrix reduce_;  // N x samples, sub-interval quadrature weights
};

NodalScalar3D project_p1(const std::function<double(const Point3&)>& f, int degree);
NodalVector3D project_p2(const std::function<Vec3(const Point3&)>& f, int degree);
NodalVector3D project_p3(const std::function<Vec3(const Point3&)>& f, int degree);
SubCellScalar3D project_p4(const std::function<double(const Point3&)>& f, int degree);

// Collocation derivatives with the LGL differentiation matrix.
NodalScalar3D partial(const QuadRule1D& rule, const NodalScalar3D& s, int axis);
NodalVector3D grad_collocation(const QuadRule1D& rule, const NodalScalar3D& s);
NodalVector3D curl_collocation(const QuadRule1D& rule, const NodalVector3D& v);
NodalScalar3D div_collocation(const QuadRule1D& rule, const NodalVector3D& v);

}  // namespace mdg

#endif  // MIMETIC_DG_MIMETIC_HPP_
