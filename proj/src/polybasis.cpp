#include "mimetic_dg/polybasis.hpp"

#include <algorithm>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mdg {

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

LegendreValue legendre(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double p_prev = 1.0, p = x;
  double dp_prev = 0.0, dp = 1.0;
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    const double dp_next = dp_prev + (2.0 * k - 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxNewton = 100;

// Roots of q(x) = (1 - x^2) P_N'(x). Using the Legendre ODE,
// q'(x) = -N (N + 1) P_N(x).
std::vector<double> lgl_nodes(int n) {
  std::vector<double> x(n + 1);
  x[0] = -1.0;
  x[n] = 1.0;
  const double nn1 = static_cast<double>(n) * (n + 1);
  for (int j = 1; j < n; ++j) {
    double xi = -std::cos(std::numbers::pi * j / n);
    for (int it = 0; it < kMaxNewton; ++it) {
      const auto [p, dp] = legendre(n, xi);
      const double q = (1.0 - xi * xi) * dp;
      const double delta = q / (-nn1 * p);
      xi -= delta;
      if (std::abs(delta) <= 4.0 * kEps) break;
    }
    x[j] = xi;
  }
  for (int j = 0; j <= n / 2; ++j) {
    const double s = 0.5 * (x[n - j] - x[j]);
    x[j] = -s;
    x[n - j] = s;
  }
  if (n % 2 == 0) x[n / 2] = 0.0;
  return x;
}

}  // namespace

QuadRule1D::QuadRule1D(int degree) : degree_(degree) {
  if (degree < 1) {
    throw InvalidDegreeError("LGL rule requires degree >= 1, got " + std::to_string(degree));
  }
  const int n = degree;
  nodes_ = lgl_nodes(n);
  const std::size_t np = nodes_.size();

  weights_.resize(np);
  const double nn1 = static_cast<double>(n) * (n + 1);
  for (std::size_t j = 0; j < np; ++j) {
    const double p = legendre(n, nodes_[j]).p;
    weights_[j] = 2.0 / (nn1 * p * p);
  }
  for (std::size_t j = 0; j <= np / 2; ++j) {
    const double w = 0.5 * (weights_[j] + weights_[np - 1 - j]);
    weights_[j] = w;
    weights_[np - 1 - j] = w;
  }

  bary_.assign(np, 1.0);
  for (std::size_t j = 0; j < np; ++j) {
    double prod = 1.0;
    for (std::size_t k = 0; k < np; ++k) {
      if (k != j) prod *= nodes_[j] - nodes_[k];
    }
    bary_[j] = 1.0 / prod;
  }

  // Off-diagonal from barycentric weights, diagonal by negative row sum.
  diff_ = Matrix(np, np);
  for (std::size_t i = 0; i < np; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      if (i == j) continue;
      const double d = (bary_[j] / bary_[i]) / (nodes_[i] - nodes_[j]);
      diff_(i, j) = d;
      row_sum += d;
    }
    diff_(i, i) = -row_sum;
  }
}

QuadRule1D lgl_rule(int degree) { return QuadRule1D(degree); }

GaussRule gauss_legendre(int points) {
  if (points < 1) throw InvalidDegreeError("Gauss rule requires at least one point");
  GaussRule g;
  g.nodes.resize(points);
  g.weights.resize(points);
  for (int i = 0; i < points; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 1.0;
    for (int it = 0; it < kMaxNewton; ++it) {
      const auto lv = legendre(points, x);
      dp = lv.dp;
      const double delta = lv.p / lv.dp;
      x -= delta;
      if (std::abs(delta) <= 4.0 * kEps) break;
    }
    dp = legendre(points, x).dp;
    g.nodes[i] = x;
    g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  for (int i = 0; i < points / 2; ++i) {
    const int j = points - 1 - i;
    const double s = 0.5 * (g.nodes[j] - g.nodes[i]);
    const double w = 0.5 * (g.weights[i] + g.weights[j]);
    g.nodes[i] = -s;
    g.nodes[j] = s;
    g.weights[i] = w;
    g.weights[j] = w;
  }
  if (points % 2 == 1) g.nodes[points / 2] = 0.0;
  return g;
}

void lagrange_row(const QuadRule1D& rule, double x, std::span<double> out) {
  const auto& nodes = rule.nodes();
  const auto& w = rule.barycentric_weights();
  const std::size_t np = nodes.size();
  for (std::size_t j = 0; j < np; ++j) {
    if (x == nodes[j]) {
      for (std::size_t k = 0; k < np; ++k) out[k] = 0.0;
      out[j] = 1.0;
      return;
    }
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < np; ++j) {
    out[j] = w[j] / (x - nodes[j]);
    sum += out[j];
  }
  for (std::size_t j = 0; j < np; ++j) out[j] /= sum;
}

// l_j' has degree N-1, so it is reproduced exactly by interpolating its nodal
// values D(m, j).
void lagrange_derivative_row(const QuadRule1D& rule, double x, std::span<double> out) {
  const std::size_t np = rule.size();
  std::vector<double> l(np);
  lagrange_row(rule, x, l);
  const Matrix& d = rule.diff_matrix();
  for (std::size_t j = 0; j < np; ++j) out[j] = 0.0;
  for (std::size_t m = 0; m < np; ++m) {
    if (l[m] == 0.0) continue;
    for (std::size_t j = 0; j < np; ++j) out[j] += l[m] * d(m, j);
  }
}

Matrix lagrange_interp_matrix(const QuadRule1D& rule, std::span<const double> targets) {
  Matrix m(targets.size(), rule.size());
  std::vector<double> row(rule.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    lagrange_row(rule, targets[t], row);
    for (std::size_t j = 0; j < rule.size(); ++j) m(t, j) = row[j];
  }
  return m;
}

Matrix lagrange_derivative_matrix(const QuadRule1D& rule, std::span<const double> targets) {
  return lagrange_interp_matrix(rule, targets) * rule.diff_matrix();
}

WideMatrix lagrange_derivative_matrix_wide(const QuadRule1D& rule, std::span<const double> targets) {
  using ld = long double;
  const auto& nodes = rule.nodes();
  const std::size_t np = nodes.size();
  std::vector<ld> bw(np, 1.0L);
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t k = 0; k < np; ++k)
      if (k != j) bw[j] *= static_cast<ld>(nodes[j]) - nodes[k];
    bw[j] = 1.0L / bw[j];
  }
  std::vector<ld> d(np * np, 0.0L);
  for (std::size_t i = 0; i < np; ++i) {
    ld diag = 0.0L;
    for (std::size_t j = 0; j < np; ++j) {
      if (j == i) continue;
      d[i * np + j] = (bw[j] / bw[i]) / (static_cast<ld>(nodes[i]) - nodes[j]);
      diag -= d[i * np + j];
    }
    d[i * np + i] = diag;
  }
  WideMatrix out{targets.size(), np, std::vector<ld>(targets.size() * np, 0.0L)};
  std::vector<ld> row(np);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const ld x = targets[t];
    const auto hit = std::find(nodes.begin(), nodes.end(), targets[t]);
    if (hit != nodes.end()) {
      std::fill(row.begin(), row.end(), 0.0L);
      row[static_cast<std::size_t>(hit - nodes.begin())] = 1.0L;
    } else {
      ld den = 0.0L;
      for (std::size_t j = 0; j < np; ++j) den += bw[j] / (x - nodes[j]);
      for (std::size_t j = 0; j < np; ++j) row[j] = bw[j] / (x - nodes[j]) / den;
    }
    for (std::size_t m = 0; m < np; ++m) {
      if (row[m] == 0.0L) continue;
      for (std::size_t j = 0; j < np; ++j) out.data[t * np + j] += row[m] * d[m * np + j];
    }
  }
  return out;
}

EdgeBasis1D::EdgeBasis1D(const QuadRule1D& rule) : rule_(rule) {
  const std::size_t np = rule_.size();
  const std::size_t n = np - 1;
  const Matrix& d = rule_.diff_matrix();
  nodal_ = Matrix(np, n);
  for (std::size_t m = 0; m < np; ++m) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      acc -= d(m, i - 1);
      nodal_(m, i - 1) = acc;
    }
  }
}

void EdgeBasis1D::eval_all(double x, std::span<double> out) const {
  const std::size_t np = rule_.size();
  std::vector<double> dl(np);
  lagrange_derivative_row(rule_, x, dl);
  double acc = 0.0;
  for (std::size_t i = 1; i < np; ++i) {
    acc -= dl[i - 1];
    out[i - 1] = acc;
  }
}

double EdgeBasis1D::eval(int i, double x) const {
  if (i < 1 || i > degree()) {
    throw std::out_of_range("edge polynomial index " + std::to_string(i) + " outside 1.." +
                            std::to_string(degree()));
  }
  std::vector<double> h(static_cast<std::size_t>(degree()));
  eval_all(x, h);
  return h[static_cast<std::size_t>(i - 1)];
}

double edge_eval(const EdgeBasis1D& basis, int i, double x) { return basis.eval(i, x); }

SubintervalQuadrature::SubintervalQuadrature(const QuadRule1D& rule, int points_per_interval)
    : intervals_(rule.degree()), q_(points_per_interval) {
  const GaussRule g = gauss_legendre(q_);
  points_.reserve(static_cast<std::size_t>(intervals_ * q_));
  weights_.reserve(points_.capacity());
  for (int j = 1; j <= intervals_; ++j) {
    const double a = rule.node(j - 1);
    const double b = rule.node(j);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int q = 0; q < q_; ++q) {
      points_.push_back(mid + half * g.nodes[q]);
      weights_.push_back(half * g.weights[q]);
    }
  }
}

void SubintervalQuadrature::integrate(std::span<const double> samples,
                                      std::span<double> out) const {
  for (int j = 0; j < intervals_; ++j) {
    double acc = 0.0;
    for (int q = 0; q < q_; ++q) {
      const std::size_t p = static_cast<std::size_t>(j * q_ + q);
      acc += weights_[p] * samples[p];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
}

std::vector<double> subinterval_integrals(const QuadRule1D& rule,
                                          const std::function<double(double)>& f,
                                          int points_per_interval) {
  const int q = points_per_interval > 0 ? points_per_interval
                                        : default_subinterval_points(rule.degree());
  SubintervalQuadrature quad(rule, q);
  std::vector<double> samples(quad.points().size());
  for (std::size_t p = 0; p < samples.size(); ++p) samples[p] = f(quad.points()[p]);
  std::vector<double> out(static_cast<std::size_t>(rule.degree()));
  quad.integrate(samples, out);
  return out;
}

}  // namespace mdg
