#ifndef MIMETIC_DG_POLYBASIS_HPP_
#define MIMETIC_DG_POLYBASIS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mdg {

/// Dense row-major matrix, just enough for the small 1D operators used here.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const double* data() const { return data_.data(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

class InvalidDegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * @brief Legendre-Gauss-Lobatto rule of degree N on [-1, 1].
 *
 * Holds the N+1 nodes, quadrature weights, barycentric weights and the
 * collocation differentiation matrix D with D(i, j) = l_j'(x_i).
 */
class QuadRule1D {
 public:
  explicit QuadRule1D(int degree);

  int degree() const { return degree_; }
  std::size_t size() const { return nodes_.size(); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& barycentric_weights() const { return bary_; }
  const Matrix& diff_matrix() const { return diff_; }

  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

 private:
  int degree_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> bary_;
  Matrix diff_;
};

QuadRule1D lgl_rule(int degree);

/// Gauss-Legendre nodes and weights with q points on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int points);

/// Legendre polynomial P_n(x) and its derivative.
struct LegendreValue {
  double p;
  double dp;
};
LegendreValue legendre(int n, double x);

/// Lagrange basis values l_j(x) for all j, barycentric form. Exact Kronecker
/// row when x coincides with a node.
void lagrange_row(const QuadRule1D& rule, double x, std::span<double> out);

/// Lagrange basis derivatives l_j'(x) for all j.
void lagrange_derivative_row(const QuadRule1D& rule, double x, std::span<double> out);

/// M(t, j) = l_j(targets[t]).
Matrix lagrange_interp_matrix(const QuadRule1D& rule, std::span<const double> targets);

/// M(t, j) = l_j'(targets[t]).
Matrix lagrange_derivative_matrix(const QuadRule1D& rule, std::span<const double> targets);

/// Row-major matrix in extended precision.
struct WideMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<long double> data;
  long double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// lagrange_derivative_matrix built in extended precision. The double version
/// carries absolute rounding of order eps N^2 in its entries, which shows up
/// in every derivative sampled through it.
WideMatrix lagrange_derivative_matrix_wide(const QuadRule1D& rule, std::span<const double> targets);

/**
 * @brief Edge polynomials h_1..h_N attached to the sub-intervals of an LGL grid.
 *
 * h_i = -sum_{j<i} l_j'. Their integral over sub-interval j is delta_ij, so
 * histopolation of sub-interval integrals c_i is sum_i c_i h_i.
 */
class EdgeBasis1D {
 public:
  explicit EdgeBasis1D(const QuadRule1D& rule);

  const QuadRule1D& rule() const { return rule_; }
  int degree() const { return rule_.degree(); }

  /// h_i(x), 1 <= i <= N.
  double eval(int i, double x) const;

  /// Values of h_1..h_N at x, written to out[0..N-1].
  void eval_all(double x, std::span<double> out) const;

  /// H(m, i-1) = h_i(node m); size (N+1) x N.
  const Matrix& nodal_values() const { return nodal_; }

 private:
  QuadRule1D rule_;
  Matrix nodal_;
};

double edge_eval(const EdgeBasis1D& basis, int i, double x);

/**
 * @brief Composite Gauss-Legendre quadrature over the LGL sub-intervals.
 *
 * Sub-interval j (1-based) is [x_{j-1}, x_j]; points are stored interval by
 * interval, q per interval.
 */
class SubintervalQuadrature {
 public:
  SubintervalQuadrature(const QuadRule1D& rule, int points_per_interval);

  int intervals() const { return intervals_; }
  int points_per_interval() const { return q_; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Reduce samples at points() to the per-interval integrals.
  void integrate(std::span<const double> samples, std::span<double> out) const;

 private:
  int intervals_;
  int q_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// Default sub-interval Gauss order for degree N.
inline int default_subinterval_points(int degree) { return degree + 2; }

/// value j-1 = integral of f over [x_{j-1}, x_j], j = 1..N.
std::vector<double> subinterval_integrals(const QuadRule1D& rule,
                                          const std::function<double(double)>& f,
                                          int points_per_interval = 0);

}  // namespace mdg

#endif  // MIMETIC_DG_POLYBASIS_HPP_
