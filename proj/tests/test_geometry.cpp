#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mimetic_dg/geometry.hpp"

using namespace mdg;

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 column(const Mat3& jac, int j) { return {jac[0][j], jac[1][j], jac[2][j]}; }

// central difference of the mapping along reference direction j
Vec3 fd_column(const Mapping3D& map, Point3 xi, int j, double h) {
  Point3 p = xi, m = xi;
  p[j] += h;
  m[j] -= h;
  const Vec3 a = map.evaluate(p), b = map.evaluate(m);
  return {(a[0] - b[0]) / (2 * h), (a[1] - b[1]) / (2 * h), (a[2] - b[2]) / (2 * h)};
}

Point3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("affine metrics from the worked example") {
  const AffineMap map({{{2.0, 0.0, 0.0}, {0.0, 3.0, 0.0}, {0.0, 0.0, 4.0}}}, {0.0, 0.0, 0.0});
  const MetricValues m = analytic_metrics(map, {0.3, -0.2, 0.5});
  const Mat3 expect{{{12.0, 0.0, 0.0}, {0.0, 8.0, 0.0}, {0.0, 0.0, 6.0}}};
  for (int i = 0; i < 3; ++i)
    for (int n = 0; n < 3; ++n) CHECK(m.ja[i][n] == expect[i][n]);
  CHECK(m.jac == 24.0);
}

TEST_CASE("identity map") {
  const IdentityMap map;
  const MetricValues m = analytic_metrics(map, {0.1, 0.2, 0.3});
  for (int i = 0; i < 3; ++i)
    for (int n = 0; n < 3; ++n) CHECK(m.ja[i][n] == (i == n ? 1.0 : 0.0));
  CHECK(m.jac == 1.0);
  const Vec3 x = map.evaluate({0.1, 0.2, 0.3});
  CHECK(x[2] == 0.3);
}

TEST_CASE("warped map values and Jacobian") {
  const WarpedCosineMap map(0.1);
  const Vec3 x0 = map.evaluate({0.0, 0.0, 0.0});
  for (double c : x0) CHECK(std::abs(c - 0.1) <= 1e-16);
  // gradient of the warp vanishes at the origin
  CHECK(std::abs(analytic_metrics(map, {0.0, 0.0, 0.0}).jac - 1.0) <= 1e-15);
  // on a face the warp flips sign with cos(pi)
  const Vec3 xc = map.evaluate({1.0, 0.0, 0.0});
  CHECK(std::abs(xc[0] - 0.9) <= 1e-15);
  CHECK(std::abs(xc[1] + 0.1) <= 1e-15);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const Point3 xi = random_point(rng);
    const Mat3 jac = map.jacobian(xi);
    for (int j = 0; j < 3; ++j) {
      const Vec3 fd = fd_column(map, xi, j, 1e-6);
      for (int m = 0; m < 3; ++m) CHECK(std::abs(jac[m][j] - fd[m]) <= 1e-7 * std::max(1.0, std::abs(jac[m][j])));
    }
  }
}

TEST_CASE("metric terms are cross products and J is the triple product") {
  const WarpedCosineMap map(0.2);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const Point3 xi = random_point(rng);
    const Mat3 jac = map.jacobian(xi);
    const MetricValues m = analytic_metrics(map, xi);
    const Vec3 a1 = cross(column(jac, 1), column(jac, 2));
    const Vec3 a2 = cross(column(jac, 2), column(jac, 0));
    const Vec3 a3 = cross(column(jac, 0), column(jac, 1));
    for (int n = 0; n < 3; ++n) {
      CHECK(std::abs(m.ja[0][n] - a1[n]) <= 1e-15);
      CHECK(std::abs(m.ja[1][n] - a2[n]) <= 1e-15);
      CHECK(std::abs(m.ja[2][n] - a3[n]) <= 1e-15);
    }
    CHECK(std::abs(m.jac - dot(column(jac, 0), a1)) <= 1e-14);
    // determinant by cofactor expansion along the first row
    const double det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                       jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                       jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
    CHECK(std::abs(m.jac - det) <= 1e-14);
    // Ja^i . x_{xi_j} = J delta_ij
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Vec3 ai{m.ja[i][0], m.ja[i][1], m.ja[i][2]};
        CHECK(std::abs(dot(ai, column(jac, j)) - (i == j ? m.jac : 0.0)) <= 1e-14);
      }
  }
}

TEST_CASE("continuous metric identity of the analytic metrics") {
  // sum_i d/dxi_i Ja^i_n by fourth-order differences
  const WarpedCosineMap map(0.1);
  const double h = 1e-3;
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const Point3 xi = random_point(rng);
    for (int n = 0; n < 3; ++n) {
      double div = 0.0;
      for (int i = 0; i < 3; ++i) {
        auto at = [&](double s) {
          Point3 p = xi;
          p[i] += s;
          return analytic_metrics(map, p).ja[i][n];
        };
        div += (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
      }
      CHECK(std::abs(div) <= 1e-8);
    }
  }
}

TEST_CASE("element mapping onto a 2x2x2 mesh") {
  const Mesh3D mesh({2, 2, 2}, std::make_shared<IdentityMap>());
  CHECK(mesh.element_count() == 8);
  const ElementMapping e0 = mesh.element_mapping(0);
  const Point3 g = e0.to_global_reference({1.0, 1.0, 1.0});
  for (double c : g) CHECK(std::abs(c) <= 1e-16);
  const Point3 lo = e0.to_global_reference({-1.0, -1.0, -1.0});
  for (double c : lo) CHECK(c == -1.0);
  // Jacobian of the composition carries the element scale
  const Mat3 jac = e0.jacobian({0.0, 0.0, 0.0});
  for (int m = 0; m < 3; ++m)
    for (int j = 0; j < 3; ++j) CHECK(jac[m][j] == (m == j ? 0.5 : 0.0));

  const int last = mesh.element_index({1, 1, 1});
  CHECK(last == 7);
  CHECK(mesh.element_coords(5) == std::array<int, 3>{1, 0, 1});
  const Point3 hi = mesh.element_mapping(last).to_global_reference({1.0, 1.0, 1.0});
  for (double c : hi) CHECK(c == 1.0);
  CHECK_THROWS(mesh.element_mapping(8));
}

TEST_CASE("elements tile the reference cube") {
  // volumes of the affine pieces add to 8
  const Mesh3D mesh({2, 3, 4}, std::make_shared<IdentityMap>());
  double vol = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) vol += 8.0 * analytic_metrics(mesh.element_mapping(e), {0, 0, 0}).jac;
  CHECK(std::abs(vol - 8.0) <= 1e-14);
}

TEST_CASE("neighbors are symmetric and faces are watertight") {
  const auto global = std::make_shared<WarpedCosineMap>(0.1);
  const Mesh3D mesh({2, 3, 2}, global);
  for (int e = 0; e < mesh.element_count(); ++e)
    for (int f = 0; f < 6; ++f) {
      const FaceNeighbor nb = mesh.neighbor(e, f);
      REQUIRE(nb.element >= 0);
      CHECK(nb.face == (f ^ 1));
      const FaceNeighbor back = mesh.neighbor(nb.element, nb.face);
      CHECK(back.element == e);
      CHECK(back.face == f);

      // matching face points map to the same physical point, up to a period
      const int d = f / 2;
      const double side = (f % 2) ? 1.0 : -1.0;
      for (double a : {-1.0, -0.3, 0.6})
        for (double b : {-0.8, 0.2, 1.0}) {
          Point3 p{}, q{};
          int t = 0;
          for (int k = 0; k < 3; ++k) {
            if (k == d) {
              p[k] = side;
              q[k] = -side;
            } else {
              p[k] = q[k] = (t++ == 0) ? a : b;
            }
          }
          const Point3 gp = mesh.element_mapping(e).to_global_reference(p);
          const Point3 gq = mesh.element_mapping(nb.element).to_global_reference(q);
          for (int k = 0; k < 3; ++k) {
            const double diff = gp[k] - gq[k];
            const double wrapped = diff - 2.0 * std::round(diff / 2.0);
            CHECK(std::abs(wrapped) <= 1e-15);
          }
        }
    }
}

TEST_CASE("non-periodic boundaries have no neighbor") {
  const Mesh3D mesh({2, 1, 1}, std::make_shared<IdentityMap>(), {false, true, true});
  CHECK(mesh.neighbor(0, 0).element == -1);
  CHECK(mesh.neighbor(0, 1).element == 1);
  CHECK(mesh.neighbor(1, 1).element == -1);
  CHECK(mesh.neighbor(0, 2).element == 0);
}

TEST_CASE("mesh rejects bad sizes") {
  CHECK_THROWS_AS(Mesh3D({0, 1, 1}, std::make_shared<IdentityMap>()), std::invalid_argument);
  CHECK_THROWS(Mesh3D({1, 1, 1}, nullptr));
}

TEST_CASE("interpolated geometry and the sampler") {
  const WarpedCosineMap map(0.1);
  const QuadRule1D rule(6);
  const auto nodal = interpolated_geometry(map, rule);
  CHECK(nodal[0].degree() == 6);
  const Vec3 x = map.evaluate({rule.node(2), rule.node(0), rule.node(5)});
  for (std::size_t m = 0; m < 3; ++m) CHECK(nodal[m](2, 0, 5) == x[m]);

  TensorGrid grid;
  grid.axes = {std::vector<double>{-0.7, 0.1}, std::vector<double>{0.35}, std::vector<double>{-0.2, 0.9, 1.0}};
  const GeometrySampler analytic(map, rule, GeometryPathway::Analytic);
  const GeometrySampler interp(map, rule, GeometryPathway::Interpolated);
  for (int m = 0; m < 3; ++m) {
    const TensorArray a = analytic.coordinate(m, grid);
    const TensorArray b = interp.coordinate(m, grid);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 2; ++i) {
        const Vec3 ex = map.evaluate({grid.axes[0][i], 0.35, grid.axes[2][k]});
        CHECK(a(i, 0, k) == ex[m]);
        // interpolation error of a cosine at N = 6 is small but nonzero
        CHECK(std::abs(b(i, 0, k) - ex[m]) <= 5e-3);
      }
    for (int j = 0; j < 3; ++j) {
      const TensorArray da = analytic.derivative(m, j, grid);
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 2; ++i)
          CHECK(da(i, 0, k) == map.jacobian({grid.axes[0][i], 0.35, grid.axes[2][k]})[m][j]);
    }
  }

  // on a polynomial map the interpolated pathway is exact
  const AffineMap affine({{{1.0, 0.2, 0.0}, {0.0, 2.0, 0.1}, {0.3, 0.0, 1.5}}}, {1.0, -1.0, 0.5});
  const GeometrySampler exact(affine, rule, GeometryPathway::Interpolated);
  for (int m = 0; m < 3; ++m)
    for (int j = 0; j < 3; ++j) {
      const TensorArray d = exact.derivative(m, j, grid);
      for (std::size_t p = 0; p < d.size(); ++p) CHECK(std::abs(d[p] - affine.jacobian({})[m][j]) <= 1e-13);
    }
}

TEST_CASE("2D maps") {
  const WarpedCosineMap2D map(0.1);
  const Point2 x = map.evaluate({0.0, 0.0});
  CHECK(std::abs(x[0] - 0.1) <= 1e-16);
  const double h = 1e-6;
  const Point2 xi{0.3, -0.4};
  const Mat2 jac = map.jacobian(xi);
  for (int j = 0; j < 2; ++j) {
    Point2 p = xi, m = xi;
    p[j] += h;
    m[j] -= h;
    const Point2 a = map.evaluate(p), b = map.evaluate(m);
    for (int r = 0; r < 2; ++r) CHECK(std::abs(jac[r][j] - (a[r] - b[r]) / (2 * h)) <= 1e-7);
  }
  const AffineMap2D aff({{{2.0, 1.0}, {0.0, 3.0}}}, {1.0, 1.0});
  const Point2 y = aff.evaluate({1.0, -1.0});
  CHECK(y[0] == 2.0);
  CHECK(y[1] == -2.0);
}
