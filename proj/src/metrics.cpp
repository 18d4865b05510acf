#include "mimetic_dg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace mdg {

std::string_view method_name(MetricMethod method) {
  switch (method) {
    case MetricMethod::CrossInterp:
      return "cross";
    case MetricMethod::KoprivaCurl:
      return "kopriva";
    case MetricMethod::MimeticBlue:
      return "mimetic-blue";
    case MetricMethod::MimeticRed:
      return "mimetic-red";
  }
  return "unknown";
}

std::optional<MetricMethod> parse_method(std::string_view name) {
  for (MetricMethod m : kAllMetricMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

// (n, m, l) cyclic
constexpr int next1(int n) { return (n + 1) % 3; }
constexpr int next2(int n) { return (n + 2) % 3; }

std::size_t u(int i) { return static_cast<std::size_t>(i); }

// J = x_xi . (x_eta x x_zeta) from collocation derivatives of the nodal geometry.
NodalScalar3D collocation_jacobian(const QuadRule1D& rule, const std::array<NodalScalar3D, 3>& x) {
  std::array<std::array<NodalScalar3D, 3>, 3> dx;
  for (int m = 0; m < 3; ++m)
    for (int j = 0; j < 3; ++j) dx[u(m)][u(j)] = partial(rule, x[u(m)], j);
  NodalScalar3D jac(rule.degree());
  for (std::size_t p = 0; p < jac.size(); ++p) {
    Mat3 a;
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t j = 0; j < 3; ++j) a[m][j] = dx[m][j][p];
    jac[p] = metrics_from_jacobian(a).jac;
  }
  return jac;
}

void check_jacobian(const NodalScalar3D& jac) {
  for (std::size_t p = 0; p < jac.size(); ++p) {
    if (!(jac[p] > 0.0)) {
      throw DegenerateElementError("nonpositive Jacobian " + std::to_string(jac[p]) +
                                   " at node " + std::to_string(p));
    }
  }
}

MimeticProjector make_projector(int degree, const MetricOptions& opts) {
  const bool exact = opts.pathway == GeometryPathway::Interpolated && opts.points_per_interval == 0;
  return MimeticProjector(degree, opts.points_per_interval,
                          exact ? MimeticProjector::Sampling::PolynomialExact
                                : MimeticProjector::Sampling::Composite);
}

MetricSet empty_set(int degree) {
  MetricSet ms;
  ms.degree = degree;
  for (auto& r : ms.ja)
    for (auto& e : r) e = NodalScalar3D(degree);
  return ms;
}

MetricSet cross_kernel(const GeometrySampler& geo, const MimeticProjector& proj) {
  const int n = proj.degree();
  const TensorGrid nodes = proj.grid({false, false, false});
  std::array<std::array<TensorArray, 3>, 3> dx;
  for (int m = 0; m < 3; ++m)
    for (int j = 0; j < 3; ++j) dx[u(m)][u(j)] = geo.derivative(m, j, nodes);
  MetricSet ms = empty_set(n);
  for (std::size_t p = 0; p < ms.ja[0][0].size(); ++p) {
    Mat3 a;
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t j = 0; j < 3; ++j) a[m][j] = dx[m][j][p];
    const MetricValues mv = metrics_from_jacobian(a);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t c = 0; c < 3; ++c) ms.ja[i][c][p] = mv.ja[i][c];
  }
  return ms;
}

MetricSet kopriva_kernel(const GeometrySampler& geo, const MimeticProjector& proj) {
  const int n = proj.degree();
  const TensorGrid nodes = proj.grid({false, false, false});
  std::array<TensorArray, 3> x;
  std::array<std::array<TensorArray, 3>, 3> dx;
  for (int m = 0; m < 3; ++m) {
    x[u(m)] = geo.coordinate(m, nodes);
    for (int j = 0; j < 3; ++j) dx[u(m)][u(j)] = geo.derivative(m, j, nodes);
  }
  MetricSet ms = empty_set(n);
  for (int c = 0; c < 3; ++c) {
    const auto m = u(next1(c));
    const auto l = u(next2(c));
    NodalVector3D v{NodalScalar3D(n), NodalScalar3D(n), NodalScalar3D(n)};
    for (std::size_t d = 0; d < 3; ++d)
      for (std::size_t p = 0; p < v[d].size(); ++p)
        v[d][p] = 0.5 * (x[l][p] * dx[m][d][p] - x[m][p] * dx[l][d][p]);
    const NodalVector3D curl = curl_collocation(proj.rule(), v);
    for (std::size_t i = 0; i < 3; ++i) {
      NodalScalar3D e = curl[i];
      for (std::size_t p = 0; p < e.size(); ++p) e[p] = -e[p];
      ms.ja[i][u(c)] = std::move(e);
    }
  }
  return ms;
}

MetricSet blue_kernel(const GeometrySampler& geo, const MimeticProjector& proj) {
  MetricSet ms = empty_set(proj.degree());
  for (int c = 0; c < 3; ++c) {
    const int m = next1(c);
    const int l = next2(c);
    // x_m grad x_l, one component at a time
    const VectorSampler field = [&](int d, const TensorGrid& g) {
      TensorArray out = geo.coordinate(m, g);
      const TensorArray dl = geo.derivative(l, d, g);
      for (std::size_t p = 0; p < out.size(); ++p) out[p] *= dl[p];
      return out;
    };
    const NodalVector3D curl = curl_collocation(proj.rule(), proj.p2(field));
    for (std::size_t i = 0; i < 3; ++i) ms.ja[i][u(c)] = curl[i];
  }
  return ms;
}

MetricSet red_kernel(const GeometrySampler& geo, const MimeticProjector& proj) {
  MetricSet ms = empty_set(proj.degree());
  for (int c = 0; c < 3; ++c) {
    const int m = next1(c);
    const int l = next2(c);
    // curl(x_m grad x_l) = grad x_m x grad x_l
    const VectorSampler field = [&](int d, const TensorGrid& g) {
      const int a = next1(d);
      const int b = next2(d);
      TensorArray out = geo.derivative(m, a, g);
      const TensorArray mb = geo.derivative(m, b, g);
      const TensorArray la = geo.derivative(l, a, g);
      const TensorArray lb = geo.derivative(l, b, g);
      for (std::size_t p = 0; p < out.size(); ++p) out[p] = out[p] * lb[p] - mb[p] * la[p];
      return out;
    };
    const NodalVector3D proj3 = proj.p3(field);
    for (std::size_t i = 0; i < 3; ++i) ms.ja[i][u(c)] = proj3[i];
  }
  return ms;
}

MetricSet element_kernel(MetricMethod method, const Mapping3D& map, const MimeticProjector& proj,
                         GeometryPathway pathway) {
  const GeometrySampler geo(map, proj.rule(), pathway);
  MetricSet ms;
  switch (method) {
    case MetricMethod::CrossInterp:
      ms = cross_kernel(geo, proj);
      break;
    case MetricMethod::KoprivaCurl:
      ms = kopriva_kernel(geo, proj);
      break;
    case MetricMethod::MimeticBlue:
      ms = blue_kernel(geo, proj);
      break;
    case MetricMethod::MimeticRed:
      ms = red_kernel(geo, proj);
      break;
  }
  ms.jac = collocation_jacobian(proj.rule(), geo.nodal());
  check_jacobian(ms.jac);
  return ms;
}

}  // namespace

MetricSet compute_metrics(MetricMethod method, const Mapping3D& map, int degree,
                          const MetricOptions& opts) {
  const MimeticProjector proj = make_projector(degree, opts);
  return element_kernel(method, map, proj, opts.pathway);
}

MetricSet metrics_cross_interp(const Mapping3D& map, int degree, const MetricOptions& opts) {
  return compute_metrics(MetricMethod::CrossInterp, map, degree, opts);
}
MetricSet metrics_kopriva_curl(const Mapping3D& map, int degree, const MetricOptions& opts) {
  return compute_metrics(MetricMethod::KoprivaCurl, map, degree, opts);
}
MetricSet metrics_mimetic_blue(const Mapping3D& map, int degree, const MetricOptions& opts) {
  return compute_metrics(MetricMethod::MimeticBlue, map, degree, opts);
}
MetricSet metrics_mimetic_red(const Mapping3D& map, int degree, const MetricOptions& opts) {
  return compute_metrics(MetricMethod::MimeticRed, map, degree, opts);
}

std::vector<MetricSet> compute_mesh_metrics(MetricMethod method, const Mesh3D& mesh, int degree,
                                            const MetricOptions& opts) {
  const MimeticProjector proj = make_projector(degree, opts);
  const int ne = mesh.element_count();
  std::vector<MetricSet> out(u(ne));
  std::vector<std::exception_ptr> errors(u(ne));
#pragma omp parallel for schedule(dynamic)
  for (int e = 0; e < ne; ++e) {
    try {
      const ElementMapping map = mesh.element_mapping(e);
      out[u(e)] = element_kernel(method, map, proj, opts.pathway);
    } catch (...) {
      errors[u(e)] = std::current_exception();
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

std::vector<MetricSet> compute_mesh_metrics_serial(MetricMethod method, const Mesh3D& mesh,
                                                   int degree, const MetricOptions& opts) {
  const MimeticProjector proj = make_projector(degree, opts);
  std::vector<MetricSet> out;
  out.reserve(u(mesh.element_count()));
  for (int e = 0; e < mesh.element_count(); ++e) {
    const ElementMapping map = mesh.element_mapping(e);
    out.push_back(element_kernel(method, map, proj, opts.pathway));
  }
  return out;
}

NodalScalar3D divergence_defect(const QuadRule1D& rule, const NodalVector3D& row) {
  return div_collocation(rule, row);
}

DefectNorms metric_defect(const MetricSet& metrics) {
  const QuadRule1D rule(metrics.degree);
  DefectNorms d;
  for (int n = 0; n < 3; ++n) d.max_raw = std::max(d.max_raw, divergence_defect(rule, metrics.row(n)).max_abs());
  d.ja_max = metrics.ja_max_abs();
  d.max_scaled = d.max_raw / (1.0 + d.ja_max);
  return d;
}

DefectNorms metric_defect(const std::vector<MetricSet>& metrics) {
  DefectNorms total;
  for (const auto& ms : metrics) {
    const DefectNorms d = metric_defect(ms);
    total.max_raw = std::max(total.max_raw, d.max_raw);
    total.ja_max = std::max(total.ja_max, d.ja_max);
  }
  total.max_scaled = total.max_raw / (1.0 + total.ja_max);
  return total;
}

ErrorNorms metric_error_norms(const std::vector<MetricSet>& computed, const Mesh3D& mesh,
                              int eval_points) {
  if (static_cast<int>(computed.size()) != mesh.element_count()) {
    throw std::invalid_argument("metric_error_norms: one MetricSet per element required");
  }
  if (computed.empty()) return {};
  const int degree = computed.front().degree;
  if (eval_points < degree + 1) {
    throw std::invalid_argument("metric_error_norms: need at least N+1 evaluation points");
  }
  const QuadRule1D rule(degree);
  const QuadRule1D eval(eval_points - 1);
  const Matrix interp = lagrange_interp_matrix(rule, eval.nodes());
  const auto np = static_cast<std::size_t>(eval_points);

  const int ne = mesh.element_count();
  std::vector<double> sq(u(ne)), vol(u(ne)), mx(u(ne));
#pragma omp parallel for schedule(dynamic)
  for (int e = 0; e < ne; ++e) {
    const MetricSet& ms = computed[u(e)];
    const ElementMapping map = mesh.element_mapping(e);
    std::array<std::array<TensorArray, 3>, 3> ja;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t c = 0; c < 3; ++c) ja[i][c] = apply_tensor(interp, interp, interp, ms.ja[i][c]);
    const TensorArray jac = apply_tensor(interp, interp, interp, ms.jac);
    double s = 0.0, v = 0.0, m = 0.0;
    for (std::size_t k = 0; k < np; ++k)
      for (std::size_t j = 0; j < np; ++j)
        for (std::size_t i = 0; i < np; ++i) {
          const MetricValues exact =
              analytic_metrics(map, {eval.node(i), eval.node(j), eval.node(k)});
          const std::size_t p = jac.index(i, j, k);
          double e2 = 0.0;
          for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t c = 0; c < 3; ++c) {
              const double diff = ja[a][c][p] - exact.ja[a][c];
              e2 += diff * diff;
              m = std::max(m, std::abs(diff));
            }
          const double w = eval.weight(i) * eval.weight(j) * eval.weight(k) * jac[p];
          s += w * e2;
          v += w;
        }
    sq[u(e)] = s;
    vol[u(e)] = v;
    mx[u(e)] = m;
  }
  ErrorNorms out;
  double s = 0.0, v = 0.0;
  for (std::size_t e = 0; e < sq.size(); ++e) {
    s += sq[e];
    v += vol[e];
    out.linf = std::max(out.linf, mx[e]);
  }
  out.l2 = std::sqrt(s / v);
  return out;
}

double face_metric_mismatch(const Mesh3D& mesh, const std::vector<MetricSet>& metrics) {
  double worst = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    for (int d = 0; d < 3; ++d) {
      const FaceNeighbor nb = mesh.neighbor(e, 2 * d + 1);
      if (nb.element < 0) continue;
      const MetricSet& a = metrics[u(e)];
      const MetricSet& b = metrics[u(nb.element)];
      const auto np = static_cast<std::size_t>(a.degree + 1);
      for (std::size_t t2 = 0; t2 < np; ++t2)
        for (std::size_t t1 = 0; t1 < np; ++t1) {
          std::array<std::size_t, 3> ia{}, ib{};
          ia[u(d)] = np - 1;
          ib[u(d)] = 0;
          ia[u(next1(d))] = ib[u(next1(d))] = t1;
          ia[u(next2(d))] = ib[u(next2(d))] = t2;
          for (std::size_t c = 0; c < 3; ++c) {
            const double va = a.ja[u(d)][c](ia[0], ia[1], ia[2]);
            const double vb = b.ja[u(d)][c](ib[0], ib[1], ib[2]);
            worst = std::max(worst, std::abs(va - vb));
          }
        }
    }
  }
  return worst;
}

TensorArray project_p1_2d(const std::function<double(const Point2&)>& f, const QuadRule1D& rule) {
  const std::size_t np = rule.size();
  TensorArray out(Dims3{np, np, 1});
  for (std::size_t j = 0; j < np; ++j)
    for (std::size_t i = 0; i < np; ++i) out(i, j, 0) = f({rule.node(i), rule.node(j)});
  return out;
}

std::array<TensorArray, 2> curl_v_collocation(const QuadRule1D& rule, const TensorArray& s) {
  TensorArray d_eta = apply_axis(rule.diff_matrix(), s, 1, Summation::Extended);
  TensorArray d_xi = apply_axis(rule.diff_matrix(), s, 0, Summation::Extended);
  for (std::size_t p = 0; p < d_xi.size(); ++p) d_xi[p] = -d_xi[p];
  return {std::move(d_eta), std::move(d_xi)};
}

MetricSet2D metrics_2d(const Mapping2D& map, int degree) {
  const QuadRule1D rule(degree);
  const TensorArray x = project_p1_2d([&](const Point2& p) { return map.evaluate(p)[0]; }, rule);
  const TensorArray y = project_p1_2d([&](const Point2& p) { return map.evaluate(p)[1]; }, rule);
  TensorArray minus_x = x;
  for (std::size_t p = 0; p < minus_x.size(); ++p) minus_x[p] = -minus_x[p];

  MetricSet2D ms;
  ms.degree = degree;
  auto row1 = curl_v_collocation(rule, y);
  auto row2 = curl_v_collocation(rule, minus_x);
  ms.ja[0][0] = std::move(row1[0]);
  ms.ja[1][0] = std::move(row1[1]);
  ms.ja[0][1] = std::move(row2[0]);
  ms.ja[1][1] = std::move(row2[1]);

  // J = x_xi y_eta - x_eta y_xi = Ja^2_2 Ja^1_1 - (-Ja^1_2)(-Ja^2_1)
  ms.jac = TensorArray(x.dims());
  for (std::size_t p = 0; p < ms.jac.size(); ++p) {
    ms.jac[p] = ms.ja[1][1][p] * ms.ja[0][0][p] - ms.ja[0][1][p] * ms.ja[1][0][p];
    if (!(ms.jac[p] > 0.0)) {
      throw DegenerateElementError("nonpositive 2D Jacobian at node " + std::to_string(p));
    }
  }
  return ms;
}

TensorArray divergence_defect_2d(const QuadRule1D& rule, const MetricSet2D& m, int n) {
  TensorArray out = apply_axis(rule.diff_matrix(), m.ja[0][u(n)], 0, Summation::Extended);
  const TensorArray b = apply_axis(rule.diff_matrix(), m.ja[1][u(n)], 1, Summation::Extended);
  for (std::size_t p = 0; p < out.size(); ++p) out[p] += b[p];
  return out;
}

MetricValues2D analytic_metrics_2d(const Mapping2D& map, const Point2& xi) {
  const Mat2 a = map.jacobian(xi);
  MetricValues2D mv;
  mv.ja[0] = {a[1][1], -a[0][1]};
  mv.ja[1] = {-a[1][0], a[0][0]};
  mv.jac = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return mv;
}

}  // namespace mdg
