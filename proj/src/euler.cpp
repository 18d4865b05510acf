#include "mimetic_dg/euler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace mdg {

EulerState::EulerState(int degree_, int elements_)
    : degree(degree_), elements(elements_) {
  data.assign(static_cast<std::size_t>(elements) * kNumVars * nodes_per_element(), 0.0);
}

std::size_t EulerState::nodes_per_element() const {
  const auto np = static_cast<std::size_t>(degree + 1);
  return np * np * np;
}

Cons EulerState::node(int e, std::size_t p) const {
  Cons q;
  for (int v = 0; v < kNumVars; ++v) q[static_cast<std::size_t>(v)] = data[offset(e, v) + p];
  return q;
}

void EulerState::set_node(int e, std::size_t p, const Cons& q) {
  for (int v = 0; v < kNumVars; ++v) data[offset(e, v) + p] = q[static_cast<std::size_t>(v)];
}

EulerState constant_state(int degree, int elements, const Cons& q) {
  EulerState s(degree, elements);
  for (int e = 0; e < elements; ++e)
    for (std::size_t p = 0; p < s.nodes_per_element(); ++p) s.set_node(e, p, q);
  return s;
}

double pressure(const Cons& u, double gamma) {
  if (!(u[0] > 0.0)) throw InvalidStateError("nonpositive density " + std::to_string(u[0]));
  const double kinetic = 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / u[0];
  return (gamma - 1.0) * (u[4] - kinetic);
}

double sound_speed(const Cons& u, double gamma) {
  const double p = pressure(u, gamma);
  if (!(p > 0.0)) throw InvalidStateError("nonpositive pressure " + std::to_string(p));
  return std::sqrt(gamma * p / u[0]);
}

Cons physical_flux(const Cons& u, int d, double gamma) {
  const double p = pressure(u, gamma);
  const auto dd = static_cast<std::size_t>(d);
  const double vd = u[dd + 1] / u[0];
  Cons f{u[dd + 1], u[1] * vd, u[2] * vd, u[3] * vd, (u[4] + p) * vd};
  f[dd + 1] += p;
  return f;
}

namespace {

// F(u) . n, summed in the same order as the contravariant flux.
Cons normal_flux(const Cons& u, const Vec3& n, double gamma) {
  const Cons f0 = physical_flux(u, 0, gamma);
  const Cons f1 = physical_flux(u, 1, gamma);
  const Cons f2 = physical_flux(u, 2, gamma);
  Cons out;
  for (std::size_t v = 0; v < kNumVars; ++v) out[v] = n[0] * f0[v] + n[1] * f1[v] + n[2] * f2[v];
  return out;
}

double max_normal_speed(const Cons& u, const Vec3& n, double gamma) {
  const double c = sound_speed(u, gamma);
  const double vn = (u[1] * n[0] + u[2] * n[1] + u[3] * n[2]) / u[0];
  return std::abs(vn) + c * std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
}

}  // namespace

Cons rusanov_flux(const Cons& ul, const Cons& ur, const Vec3& n, double gamma) {
  const Cons fl = normal_flux(ul, n, gamma);
  const Cons fr = normal_flux(ur, n, gamma);
  const double lambda = std::max(max_normal_speed(ul, n, gamma), max_normal_speed(ur, n, gamma));
  Cons out;
  for (std::size_t v = 0; v < kNumVars; ++v) {
    out[v] = 0.5 * (fl[v] + fr[v]) - 0.5 * lambda * (ur[v] - ul[v]);
  }
  return out;
}

void SolverConfig::validate() const {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  for (int m : mesh)
    if (m < 1) throw std::invalid_argument("mesh needs at least one element per direction");
  if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
  if (!(cfl > 0.0)) throw std::invalid_argument("CFL must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("end time must be nonnegative");
}

DgsemOperator::DgsemOperator(const Mesh3D& mesh, std::vector<MetricSet> metrics, double gamma)
    : mesh_(&mesh),
      metrics_(std::move(metrics)),
      gamma_(gamma),
      rule_(metrics_.empty() ? 1 : metrics_.front().degree) {
  if (static_cast<int>(metrics_.size()) != mesh.element_count()) {
    throw std::invalid_argument("DgsemOperator: one MetricSet per element required");
  }
  for (const auto& ms : metrics_) {
    if (ms.degree != rule_.degree()) throw std::invalid_argument("DgsemOperator: mixed degrees");
  }
  neighbors_.resize(metrics_.size());
  for (int e = 0; e < mesh.element_count(); ++e) {
    for (int f = 0; f < 6; ++f) {
      const FaceNeighbor nb = mesh.neighbor(e, f);
      if (nb.element < 0) throw std::invalid_argument("DgsemOperator: only periodic meshes are supported");
      neighbors_[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] = nb;
    }
  }
}

void DgsemOperator::element_rhs(int e, std::span<const double> u, std::span<double> dudt) const {
  const auto np = static_cast<std::size_t>(degree() + 1);
  const std::size_t nn = np * np * np;
  const std::size_t plane = np * np;
  const MetricSet& ms = metrics_[static_cast<std::size_t>(e)];
  const Matrix& dm = rule_.diff_matrix();
  const std::size_t base = static_cast<std::size_t>(e) * kNumVars * nn;
  auto at = [&](std::size_t elem_base, std::size_t v, std::size_t p) {
    return u[elem_base + v * nn + p];
  };

  // Contravariant fluxes ft[(s * 5 + v) * nn + p].
  std::vector<double> ft(3 * kNumVars * nn);
  for (std::size_t p = 0; p < nn; ++p) {
    const Cons q{at(base, 0, p), at(base, 1, p), at(base, 2, p), at(base, 3, p), at(base, 4, p)};
    const double pr = q[0] > 0.0 ? pressure(q, gamma_) : 0.0;
    if (!(q[0] > 0.0) || !(pr > 0.0) || !std::isfinite(q[4])) {
      throw InvalidStateError("invalid state in element " + std::to_string(e) + " at node " +
                              std::to_string(p) + ": rho = " + std::to_string(q[0]) +
                              ", p = " + std::to_string(pr));
    }
    const Cons f0 = physical_flux(q, 0, gamma_);
    const Cons f1 = physical_flux(q, 1, gamma_);
    const Cons f2 = physical_flux(q, 2, gamma_);
    for (std::size_t s = 0; s < 3; ++s) {
      const double a0 = ms.ja[s][0][p], a1 = ms.ja[s][1][p], a2 = ms.ja[s][2][p];
      for (std::size_t v = 0; v < kNumVars; ++v)
        ft[(s * kNumVars + v) * nn + p] = a0 * f0[v] + a1 * f1[v] + a2 * f2[v];
    }
  }

  // Volume term: sum_s D_s F~^s.
  double* out = dudt.data() + base;
  std::fill(out, out + kNumVars * nn, 0.0);
  for (std::size_t v = 0; v < kNumVars; ++v) {
    double* dv = out + v * nn;
    const double* g0 = &ft[(0 * kNumVars + v) * nn];
    const double* g1 = &ft[(1 * kNumVars + v) * nn];
    const double* g2 = &ft[(2 * kNumVars + v) * nn];
    for (std::size_t line = 0; line < plane; ++line) {
      const double* src = g0 + line * np;
      double* dst = dv + line * np;
      for (std::size_t i = 0; i < np; ++i) {
        const double* drow = dm.data() + i * np;
        double acc = 0.0;
        for (std::size_t m = 0; m < np; ++m) acc += drow[m] * src[m];
        dst[i] = acc;
      }
    }
    for (std::size_t k = 0; k < np; ++k)
      for (std::size_t j = 0; j < np; ++j) {
        double* dst = dv + (k * np + j) * np;
        for (std::size_t m = 0; m < np; ++m) {
          const double d = dm(j, m);
          const double* src = g1 + (k * np + m) * np;
          for (std::size_t i = 0; i < np; ++i) dst[i] += d * src[i];
        }
      }
    for (std::size_t k = 0; k < np; ++k) {
      double* dst = dv + k * plane;
      for (std::size_t m = 0; m < np; ++m) {
        const double d = dm(k, m);
        const double* src = g2 + m * plane;
        for (std::size_t p = 0; p < plane; ++p) dst[p] += d * src[p];
      }
    }
  }

  // Surface lifting on the 6 faces.
  const std::size_t stride[3] = {1, np, plane};
  const auto& nbs = neighbors_[static_cast<std::size_t>(e)];
  for (std::size_t s = 0; s < 3; ++s) {
    const std::size_t t1 = (s + 1) % 3, t2 = (s + 2) % 3;
    for (std::size_t side = 0; side < 2; ++side) {
      const FaceNeighbor nb = nbs[2 * s + side];
      const std::size_t nb_base = static_cast<std::size_t>(nb.element) * kNumVars * nn;
      const std::size_t own = side == 1 ? np - 1 : 0;
      const std::size_t other = side == 1 ? 0 : np - 1;
      const double sign = side == 1 ? 1.0 : -1.0;
      const double inv_w = 1.0 / rule_.weight(own);
      for (std::size_t b = 0; b < np; ++b)
        for (std::size_t a = 0; a < np; ++a) {
          const std::size_t tang = a * stride[t1] + b * stride[t2];
          const std::size_t p = own * stride[s] + tang;
          const std::size_t q = other * stride[s] + tang;
          const Cons ul{at(base, 0, p), at(base, 1, p), at(base, 2, p), at(base, 3, p), at(base, 4, p)};
          const Cons ur{at(nb_base, 0, q), at(nb_base, 1, q), at(nb_base, 2, q), at(nb_base, 3, q),
                        at(nb_base, 4, q)};
          const Vec3 n{sign * ms.ja[s][0][p], sign * ms.ja[s][1][p], sign * ms.ja[s][2][p]};
          const Cons fstar = rusanov_flux(ul, ur, n, gamma_);
          for (std::size_t v = 0; v < kNumVars; ++v) {
            const double fn = sign * ft[(s * kNumVars + v) * nn + p];
            out[v * nn + p] += inv_w * (fstar[v] - fn);
          }
        }
    }
  }

  for (std::size_t v = 0; v < kNumVars; ++v)
    for (std::size_t p = 0; p < nn; ++p) out[v * nn + p] = -out[v * nn + p] / ms.jac[p];
}

void DgsemOperator::rhs(std::span<const double> u, std::span<double> dudt) const {
  const int ne = mesh_->element_count();
  const std::size_t expected = static_cast<std::size_t>(ne) * kNumVars *
                               metrics_.front().jac.size();
  if (u.size() != expected || dudt.size() != expected) {
    throw std::invalid_argument("DgsemOperator::rhs: state size mismatch");
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(ne));
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    try {
      element_rhs(e, u, dudt);
    } catch (...) {
      errors[static_cast<std::size_t>(e)] = std::current_exception();
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

EulerState DgsemOperator::rhs(const EulerState& u) const {
  EulerState out(u.degree, u.elements);
  rhs(u.data, out.data);
  return out;
}

EulerState dgsem_rhs(const EulerState& u, const Mesh3D& mesh, const std::vector<MetricSet>& metrics,
                     double gamma) {
  return DgsemOperator(mesh, metrics, gamma).rhs(u);
}

std::array<ErrorNorms, kNumVars> fsp_error(const EulerState& u, const Cons& reference,
                                           const std::vector<MetricSet>& metrics,
                                           int eval_points) {
  if (static_cast<int>(metrics.size()) != u.elements) {
    throw std::invalid_argument("fsp_error: one MetricSet per element required");
  }
  const QuadRule1D rule(u.degree);
  const QuadRule1D eval(eval_points - 1);
  const Matrix interp = lagrange_interp_matrix(rule, eval.nodes());
  const auto np = static_cast<std::size_t>(u.degree + 1);
  const Dims3 nd{np, np, np};

  std::array<double, kNumVars> sq{}, mx{};
  double vol = 0.0;
  for (int e = 0; e < u.elements; ++e) {
    const TensorArray jac = apply_tensor(interp, interp, interp, metrics[static_cast<std::size_t>(e)].jac);
    std::vector<double> w(jac.size());
    for (std::size_t k = 0; k < eval.size(); ++k)
      for (std::size_t j = 0; j < eval.size(); ++j)
        for (std::size_t i = 0; i < eval.size(); ++i) {
          const std::size_t p = jac.index(i, j, k);
          w[p] = eval.weight(i) * eval.weight(j) * eval.weight(k) * jac[p];
          vol += w[p];
        }
    for (int v = 0; v < kNumVars; ++v) {
      TensorArray err(nd);
      const std::size_t off = u.offset(e, v);
      for (std::size_t p = 0; p < err.size(); ++p) err[p] = u.data[off + p] - reference[static_cast<std::size_t>(v)];
      const TensorArray fine = apply_tensor(interp, interp, interp, err);
      const auto vv = static_cast<std::size_t>(v);
      for (std::size_t p = 0; p < fine.size(); ++p) {
        sq[vv] += w[p] * fine[p] * fine[p];
        mx[vv] = std::max(mx[vv], std::abs(fine[p]));
      }
    }
  }
  std::array<ErrorNorms, kNumVars> out;
  for (std::size_t v = 0; v < kNumVars; ++v) out[v] = {std::sqrt(sq[v] / vol), mx[v]};
  return out;
}

}  // namespace mdg
