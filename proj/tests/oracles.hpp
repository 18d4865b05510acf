// Test-side reference computations. Nothing here calls into the library, so
// agreement with the library is evidence rather than tautology.
#ifndef MDG_TESTS_ORACLES_HPP_
#define MDG_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using ld = long double;

// P_n and P_n' by the three-term recurrence, in long double.
inline std::pair<ld, ld> legendre(int n, ld x) {
  ld p0 = 1, p1 = x;
  if (n == 0) return {1, 0};
  for (int k = 2; k <= n; ++k) {
    const ld p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const ld dp = (std::abs(x) == 1) ? ld(n) * (n + 1) / 2 * (x > 0 ? 1 : (n % 2 ? 1 : -1))
                                   : n * (x * p1 - p0) / (x * x - 1);
  return {p1, dp};
}

struct Rule {
  std::vector<ld> x, w;
};

// Gauss-Legendre on [-1, 1] by Newton on P_n with cosine guesses.
inline Rule gauss(int n) {
  Rule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(r.x.size());
  for (int i = 0; i < n; ++i) {
    ld x = std::cos(std::numbers::pi_v<ld> * (i + 0.75L) / (n + 0.5L));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const ld dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    r.x[static_cast<std::size_t>(i)] = x;
    r.w[static_cast<std::size_t>(i)] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}

// integral of f over [a, b], composite Gauss with `pieces` panels
inline ld integrate(const std::function<ld(ld)>& f, ld a, ld b, int points = 30, int pieces = 4) {
  const Rule g = gauss(points);
  ld sum = 0;
  const ld h = (b - a) / pieces;
  for (int s = 0; s < pieces; ++s) {
    const ld lo = a + s * h;
    for (std::size_t q = 0; q < g.x.size(); ++q) sum += g.w[q] * h / 2 * f(lo + (g.x[q] + 1) * h / 2);
  }
  return sum;
}

// Lagrange basis through arbitrary nodes by the product formula.
inline ld lagrange(const std::vector<double>& nodes, std::size_t j, ld x) {
  ld v = 1;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (k != j) v *= (x - nodes[k]) / (ld(nodes[j]) - nodes[k]);
  return v;
}

inline ld lagrange_derivative(const std::vector<double>& nodes, std::size_t j, ld x) {
  ld sum = 0;
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    if (m == j) continue;
    ld term = 1 / (ld(nodes[j]) - nodes[m]);
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (k != j && k != m) term *= (x - nodes[k]) / (ld(nodes[j]) - nodes[k]);
    sum += term;
  }
  return sum;
}

// Edge polynomial straight from its definition h_i = -sum_{k<i} l_k'.
inline ld edge(const std::vector<double>& nodes, int i, ld x) {
  ld v = 0;
  for (int k = 0; k < i; ++k) v -= lagrange_derivative(nodes, static_cast<std::size_t>(k), x);
  return v;
}

inline ld monomial_integral(int k) { return k % 2 == 1 ? 0 : ld(2) / (k + 1); }

// Random polynomial of a given degree with coefficients in [-1, 1].
struct Poly1 {
  std::vector<double> c;
  double operator()(double x) const {
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
  }
  double derivative(double x) const {
    double v = 0;
    for (std::size_t k = c.size(); k-- > 1;) v = v * x + static_cast<double>(k) * c[k];
    return v;
  }
  double antiderivative(double x) const {
    double v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k] / static_cast<double>(k + 1);
    return v * x;
  }
};

inline Poly1 random_poly(int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly1 p;
  p.c.resize(static_cast<std::size_t>(degree + 1));
  for (auto& c : p.c) c = u(rng);
  return p;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle

#endif  // MDG_TESTS_ORACLES_HPP_
