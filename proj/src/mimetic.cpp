#include "mimetic_dg/mimetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mdg {

double TensorArray::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Acc is the accumulator type; entries of A are read through `at`.
template <class Acc, class At>
TensorArray contract(At at, std::size_t rows, std::size_t cols, const TensorArray& in, int axis) {
  const Dims3& d = in.dims();
  if (axis < 0 || axis > 2) throw std::invalid_argument("apply_axis: axis must be 0, 1 or 2");
  const auto ax = static_cast<std::size_t>(axis);
  if (cols != d[ax]) {
    throw std::invalid_argument("apply_axis: matrix has " + std::to_string(cols) +
                                " columns, axis has " + std::to_string(d[ax]) + " entries");
  }
  Dims3 od = d;
  od[ax] = rows;
  TensorArray out(od);
  const auto src = in.values();
  auto dst = out.values();

  if (axis == 0) {
    for (std::size_t k = 0; k < d[2]; ++k)
      for (std::size_t j = 0; j < d[1]; ++j) {
        const std::size_t si = in.index(0, j, k);
        const std::size_t di = out.index(0, j, k);
        for (std::size_t t = 0; t < rows; ++t) {
          Acc acc = 0;
          for (std::size_t m = 0; m < cols; ++m) acc += static_cast<Acc>(at(t, m)) * src[si + m];
          dst[di + t] = static_cast<double>(acc);
        }
      }
    return out;
  }

  // axes 1 and 2: stream whole lines of the faster indices, skipping zeros
  const std::size_t inner = axis == 1 ? d[0] : d[0] * d[1];
  const std::size_t outer = axis == 1 ? d[2] : 1;
  std::vector<Acc> acc(inner);
  for (std::size_t k = 0; k < outer; ++k)
    for (std::size_t t = 0; t < rows; ++t) {
      std::fill(acc.begin(), acc.end(), Acc{0});
      for (std::size_t m = 0; m < cols; ++m) {
        const auto am = at(t, m);
        if (am == 0) continue;
        const std::size_t si = axis == 1 ? in.index(0, m, k) : m * inner;
        for (std::size_t i = 0; i < inner; ++i) acc[i] += static_cast<Acc>(am) * src[si + i];
      }
      const std::size_t di = axis == 1 ? out.index(0, t, k) : t * inner;
      for (std::size_t i = 0; i < inner; ++i) dst[di + i] = static_cast<double>(acc[i]);
    }
  return out;
}

}  // namespace

TensorArray apply_axis(const Matrix& a, const TensorArray& in, int axis, Summation summation) {
  const auto at = [&a](std::size_t r, std::size_t c) { return a(r, c); };
  if (summation == Summation::Extended) return contract<long double>(at, a.rows(), a.cols(), in, axis);
  return contract<double>(at, a.rows(), a.cols(), in, axis);
}

TensorArray apply_axis(const WideMatrix& a, const TensorArray& in, int axis) {
  return contract<long double>([&a](std::size_t r, std::size_t c) { return a(r, c); }, a.rows,
                               a.cols, in, axis);
}

TensorArray apply_tensor(const Matrix& a0, const Matrix& a1, const Matrix& a2,
                         const TensorArray& in, Summation summation) {
  return apply_axis(a2, apply_axis(a1, apply_axis(a0, in, 0, summation), 1, summation), 2,
                    summation);
}

NodalScalar3D::NodalScalar3D(int degree, double fill)
    : TensorArray(Dims3{static_cast<std::size_t>(degree + 1), static_cast<std::size_t>(degree + 1),
                        static_cast<std::size_t>(degree + 1)},
                  fill),
      degree_(degree) {}

NodalScalar3D::NodalScalar3D(int degree, TensorArray values)
    : TensorArray(std::move(values)), degree_(degree) {
  const auto n = static_cast<std::size_t>(degree + 1);
  if (dims() != Dims3{n, n, n}) throw std::invalid_argument("NodalScalar3D: dims do not match degree");
}

int NodalVector3D::degree() const {
  const int n = comp[0].degree();
  if (comp[1].degree() != n || comp[2].degree() != n) {
    throw std::invalid_argument("NodalVector3D: components have different degrees");
  }
  return n;
}

double NodalVector3D::max_abs() const {
  return std::max({comp[0].max_abs(), comp[1].max_abs(), comp[2].max_abs()});
}

SubCellScalar3D::SubCellScalar3D(int degree, TensorArray values)
    : TensorArray(std::move(values)), degree_(degree) {
  const auto n = static_cast<std::size_t>(degree);
  if (dims() != Dims3{n, n, n}) throw std::invalid_argument("SubCellScalar3D: dims do not match degree");
}

ScalarSampler pointwise_sampler(std::function<double(const Point3&)> f) {
  return [f = std::move(f)](const TensorGrid& g) {
    TensorArray out(g.dims());
    for (std::size_t k = 0; k < g.axes[2].size(); ++k)
      for (std::size_t j = 0; j < g.axes[1].size(); ++j)
        for (std::size_t i = 0; i < g.axes[0].size(); ++i)
          out(i, j, k) = f({g.axes[0][i], g.axes[1][j], g.axes[2][k]});
    return out;
  };
}

VectorSampler pointwise_sampler(std::function<Vec3(const Point3&)> f) {
  return [f = std::move(f)](int c, const TensorGrid& g) {
    TensorArray out(g.dims());
    const auto cc = static_cast<std::size_t>(c);
    for (std::size_t k = 0; k < g.axes[2].size(); ++k)
      for (std::size_t j = 0; j < g.axes[1].size(); ++j)
        for (std::size_t i = 0; i < g.axes[0].size(); ++i)
          out(i, j, k) = f({g.axes[0][i], g.axes[1][j], g.axes[2][k]})[cc];
    return out;
  };
}

namespace {

// Row q of the result holds l_q at each x, for the Lagrange basis on nodes.
Matrix lagrange_on(const std::vector<double>& nodes, const std::vector<double>& x) {
  const std::size_t m = nodes.size();
  std::vector<double> bw(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) bw[j] *= nodes[j] - nodes[k];
    bw[j] = 1.0 / bw[j];
  }
  Matrix out(x.size(), m);
  for (std::size_t p = 0; p < x.size(); ++p) {
    const auto hit = std::find(nodes.begin(), nodes.end(), x[p]);
    if (hit != nodes.end()) {
      out(p, static_cast<std::size_t>(hit - nodes.begin())) = 1.0;
      continue;
    }
    double den = 0.0;
    for (std::size_t j = 0; j < m; ++j) den += bw[j] / (x[p] - nodes[j]);
    for (std::size_t j = 0; j < m; ++j) out(p, j) = bw[j] / (x[p] - nodes[j]) / den;
  }
  return out;
}

}  // namespace

MimeticProjector::MimeticProjector(int degree, int points_per_interval, Sampling sampling)
    : rule_(degree),
      edges_(rule_),
      subquad_(rule_, points_per_interval > 0 ? points_per_interval
                                              : default_subinterval_points(degree)),
      sampling_(sampling) {
  const std::size_t n = static_cast<std::size_t>(degree);
  const std::size_t q = static_cast<std::size_t>(subquad_.points_per_interval());
  Matrix composite(n, n * q);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t p = 0; p < q; ++p) composite(j, j * q + p) = subquad_.weights()[j * q + p];
  if (sampling == Sampling::Composite) {
    sample_points_ = subquad_.points();
    reduce_ = std::move(composite);
    return;
  }
  // weights(j, s) = integral of the Lagrange polynomial of sample s over
  // sub-interval j; the composite rule is exact for these when Q >= N + 1
  if (q < n + 1) throw std::invalid_argument("PolynomialExact sampling needs at least N + 1 points per interval");
  sample_points_ = QuadRule1D(2 * degree).nodes();
  reduce_ = composite * lagrange_on(sample_points_, subquad_.points());
}

TensorGrid MimeticProjector::grid(std::array<bool, 3> subinterval_axes) const {
  TensorGrid g;
  for (std::size_t d = 0; d < 3; ++d) g.axes[d] = subinterval_axes[d] ? sample_points_ : rule_.nodes();
  return g;
}

NodalScalar3D MimeticProjector::p1(const ScalarSampler& f) const {
  return NodalScalar3D(degree(), f(grid({false, false, false})));
}

// Component d: integrate along d over each sub-interval, then expand in the
// edge basis of direction d. Lagrange directions are plain nodal samples.
NodalVector3D MimeticProjector::p2(const VectorSampler& f) const {
  NodalVector3D out;
  const Matrix& h = edges_.nodal_values();
  for (int d = 0; d < 3; ++d) {
    std::array<bool, 3> sub{false, false, false};
    sub[static_cast<std::size_t>(d)] = true;
    TensorArray integrals = apply_axis(reduce_, f(d, grid(sub)), d, Summation::Extended);
    out[static_cast<std::size_t>(d)] =
        NodalScalar3D(degree(), apply_axis(h, integrals, d, Summation::Extended));
  }
  return out;
}

// Component d: integrate over the sub-faces transverse to d, expand in edge
// bases of both transverse directions.
NodalVector3D MimeticProjector::p3(const VectorSampler& f) const {
  NodalVector3D out;
  const Matrix& h = edges_.nodal_values();
  for (int d = 0; d < 3; ++d) {
    const int a = (d + 1) % 3;
    const int b = (d + 2) % 3;
    std::array<bool, 3> sub{true, true, true};
    sub[static_cast<std::size_t>(d)] = false;
    TensorArray integrals = apply_axis(
        reduce_, apply_axis(reduce_, f(d, grid(sub)), a, Summation::Extended), b, Summation::Extended);
    out[static_cast<std::size_t>(d)] =
        NodalScalar3D(degree(), apply_axis(h, apply_axis(h, integrals, a, Summation::Extended), b,
                                           Summation::Extended));
  }
  return out;
}

SubCellScalar3D MimeticProjector::p4(const ScalarSampler& f) const {
  return SubCellScalar3D(degree(),
                         apply_tensor(reduce_, reduce_, reduce_, f(grid({true, true, true})),
                                      Summation::Extended));
}

SubCellScalar3D MimeticProjector::subcell_integrals(const NodalScalar3D& s) const {
  const Matrix to_sub = lagrange_interp_matrix(rule_, sample_points_);
  TensorArray sampled = apply_tensor(to_sub, to_sub, to_sub, s, Summation::Extended);
  return SubCellScalar3D(degree(),
                         apply_tensor(reduce_, reduce_, reduce_, sampled, Summation::Extended));
}

NodalScalar3D project_p1(const std::function<double(const Point3&)>& f, int degree) {
  return MimeticProjector(degree).p1(pointwise_sampler(f));
}

NodalVector3D project_p2(const std::function<Vec3(const Point3&)>& f, int degree) {
  return MimeticProjector(degree).p2(pointwise_sampler(f));
}

NodalVector3D project_p3(const std::function<Vec3(const Point3&)>& f, int degree) {
  return MimeticProjector(degree).p3(pointwise_sampler(f));
}

SubCellScalar3D project_p4(const std::function<double(const Point3&)>& f, int degree) {
  return MimeticProjector(degree).p4(pointwise_sampler(f));
}

namespace {

void require_degree(const QuadRule1D& rule, int degree) {
  if (degree != rule.degree()) {
    throw std::invalid_argument("collocation operator: field degree " + std::to_string(degree) +
                                " does not match rule degree " + std::to_string(rule.degree()));
  }
}

}  // namespace

NodalScalar3D partial(const QuadRule1D& rule, const NodalScalar3D& s, int axis) {
  require_degree(rule, s.degree());
  return NodalScalar3D(s.degree(), apply_axis(rule.diff_matrix(), s, axis, Summation::Extended));
}

NodalVector3D grad_collocation(const QuadRule1D& rule, const NodalScalar3D& s) {
  return {partial(rule, s, 0), partial(rule, s, 1), partial(rule, s, 2)};
}

NodalVector3D curl_collocation(const QuadRule1D& rule, const NodalVector3D& v) {
  require_degree(rule, v.degree());
  NodalVector3D out;
  for (int d = 0; d < 3; ++d) {
    const int a = (d + 1) % 3;
    const int b = (d + 2) % 3;
    // (curl v)_d = d_a v_b - d_b v_a
    NodalScalar3D pa = partial(rule, v[static_cast<std::size_t>(b)], a);
    const NodalScalar3D pb = partial(rule, v[static_cast<std::size_t>(a)], b);
    for (std::size_t p = 0; p < pa.size(); ++p) pa[p] -= pb[p];
    out[static_cast<std::size_t>(d)] = std::move(pa);
  }
  return out;
}

NodalScalar3D div_collocation(const QuadRule1D& rule, const NodalVector3D& v) {
  require_degree(rule, v.degree());
  NodalScalar3D out = partial(rule, v[0], 0);
  const NodalScalar3D d1 = partial(rule, v[1], 1);
  const NodalScalar3D d2 = partial(rule, v[2], 2);
  for (std::size_t p = 0; p < out.size(); ++p) out[p] += d1[p] + d2[p];
  return out;
}

}  // namespace mdg
