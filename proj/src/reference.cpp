#include "mimetic_dg/reference.hpp"

#include <array>

namespace mdg::reference {

std::vector<double> lagrange_derivatives_product_rule(const QuadRule1D& rule, double x) {
  const std::size_t np = rule.size();
  std::vector<double> l(np), dl(np);
  lagrange_row(rule, x, l);
  for (std::size_t j = 0; j < np; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < np; ++k)
      if (k != j) s += 1.0 / (x - rule.node(k));
    dl[j] = l[j] * s;
  }
  return dl;
}

EulerState dgsem_rhs_weak(const EulerState& u, const Mesh3D& mesh,
                          const std::vector<MetricSet>& metrics, double gamma) {
  const int n = u.degree;
  const QuadRule1D rule(n);
  const auto np = static_cast<std::size_t>(n + 1);
  const std::size_t nn = np * np * np;

  // stiff(m, i) = integral of l_m l_i' over [-1, 1]
  const GaussRule g = gauss_legendre(n + 1);
  Matrix stiff(np, np);
  std::vector<double> lq(np);
  for (std::size_t q = 0; q < g.nodes.size(); ++q) {
    lagrange_row(rule, g.nodes[q], lq);
    const std::vector<double> dlq = lagrange_derivatives_product_rule(rule, g.nodes[q]);
    for (std::size_t m = 0; m < np; ++m)
      for (std::size_t i = 0; i < np; ++i) stiff(m, i) += g.weights[q] * lq[m] * dlq[i];
  }

  auto idx = [np](std::array<std::size_t, 3> c) { return c[0] + np * (c[1] + np * c[2]); };

  EulerState out(n, u.elements);
  for (int e = 0; e < u.elements; ++e) {
    const MetricSet& ms = metrics[static_cast<std::size_t>(e)];
    std::vector<std::array<Cons, 3>> ft(nn);
    for (std::size_t p = 0; p < nn; ++p) {
      const Cons q = u.node(e, p);
      const std::array<Cons, 3> f{physical_flux(q, 0, gamma), physical_flux(q, 1, gamma),
                                  physical_flux(q, 2, gamma)};
      for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t v = 0; v < kNumVars; ++v)
          ft[p][s][v] = ms.ja[s][0][p] * f[0][v] + ms.ja[s][1][p] * f[1][v] + ms.ja[s][2][p] * f[2][v];
    }

    std::vector<Cons> acc(nn, Cons{});
    for (std::size_t k = 0; k < np; ++k)
      for (std::size_t j = 0; j < np; ++j)
        for (std::size_t i = 0; i < np; ++i) {
          const std::array<std::size_t, 3> c{i, j, k};
          const std::size_t p = idx(c);
          for (std::size_t s = 0; s < 3; ++s) {
            const std::size_t t1 = (s + 1) % 3, t2 = (s + 2) % 3;
            const double wt = rule.weight(c[t1]) * rule.weight(c[t2]);
            for (std::size_t m = 0; m < np; ++m) {
              std::array<std::size_t, 3> cm = c;
              cm[s] = m;
              const double sm = wt * stiff(m, c[s]);
              for (std::size_t v = 0; v < kNumVars; ++v) acc[p][v] += sm * ft[idx(cm)][s][v];
            }
          }
        }

    for (std::size_t s = 0; s < 3; ++s) {
      const std::size_t t1 = (s + 1) % 3, t2 = (s + 2) % 3;
      for (std::size_t side = 0; side < 2; ++side) {
        const FaceNeighbor nb = mesh.neighbor(e, static_cast<int>(2 * s + side));
        const double sign = side == 1 ? 1.0 : -1.0;
        for (std::size_t b = 0; b < np; ++b)
          for (std::size_t a = 0; a < np; ++a) {
            std::array<std::size_t, 3> c{}, cn{};
            c[s] = side == 1 ? np - 1 : 0;
            cn[s] = side == 1 ? 0 : np - 1;
            c[t1] = cn[t1] = a;
            c[t2] = cn[t2] = b;
            const std::size_t p = idx(c);
            const Vec3 normal{sign * ms.ja[s][0][p], sign * ms.ja[s][1][p], sign * ms.ja[s][2][p]};
            const Cons fstar = rusanov_flux(u.node(e, p), u.node(nb.element, idx(cn)), normal, gamma);
            const double wt = rule.weight(a) * rule.weight(b);
            for (std::size_t v = 0; v < kNumVars; ++v) acc[p][v] -= wt * fstar[v];
          }
      }
    }

    for (std::size_t k = 0; k < np; ++k)
      for (std::size_t j = 0; j < np; ++j)
        for (std::size_t i = 0; i < np; ++i) {
          const std::size_t p = idx({i, j, k});
          const double mass = rule.weight(i) * rule.weight(j) * rule.weight(k) * ms.jac[p];
          Cons r;
          for (std::size_t v = 0; v < kNumVars; ++v) r[v] = acc[p][v] / mass;
          out.set_node(e, p, r);
        }
  }
  return out;
}

}  // namespace mdg::reference
