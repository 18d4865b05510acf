#include "mimetic_dg/timeint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mdg {

const LsrkScheme& LsrkScheme::carpenter_kennedy_54() {
  static const LsrkScheme scheme{
      {0.0, -567301805773.0 / 1357537059087.0, -2404267990393.0 / 2016746695238.0,
       -3550918686646.0 / 2091501179385.0, -1275806237668.0 / 842570457699.0},
      {1432997174477.0 / 9575080441755.0, 5161836677717.0 / 13612068292357.0,
       1720146321549.0 / 2090206949498.0, 3134564353537.0 / 4481467310338.0,
       2277821191437.0 / 14882151754819.0},
      {0.0, 1432997174477.0 / 9575080441755.0, 2526269341429.0 / 6820363183900.0,
       2006345519317.0 / 3224310063776.0, 2802321613138.0 / 2924317926251.0}};
  return scheme;
}

void lsrk_step(std::vector<double>& u, std::vector<double>& stage, std::vector<double>& k, double t,
               double dt, const RhsFunction& rhs, const LsrkScheme& scheme) {
  stage.resize(u.size());
  k.assign(u.size(), 0.0);
  for (std::size_t s = 0; s < 5; ++s) {
    rhs(u, t + scheme.c[s] * dt, stage);
    const double a = scheme.a[s];
    const double b = scheme.b[s];
    for (std::size_t p = 0; p < u.size(); ++p) {
      k[p] = a * k[p] + dt * stage[p];
      u[p] += b * k[p];
    }
  }
}

IntegrationStats integrate(std::vector<double>& u, const RhsFunction& rhs, double t_end,
                           const StepSizeFunction& dt_fn, const LsrkScheme& scheme) {
  if (t_end < 0.0) throw std::invalid_argument("integrate: negative end time");
  IntegrationStats stats;
  std::vector<double> stage, k;
  while (stats.t < t_end) {
    double dt = dt_fn(u);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw DivergenceError("nonpositive or non-finite time step at step " +
                                std::to_string(stats.steps),
                            stats.steps);
    }
    bool last = false;
    if (stats.t + dt >= t_end) {
      dt = t_end - stats.t;
      last = true;
    }
    lsrk_step(u, stage, k, stats.t, dt, rhs, scheme);
    ++stats.steps;
    for (double v : u) {
      if (!std::isfinite(v)) {
        throw DivergenceError("non-finite state after step " + std::to_string(stats.steps),
                              stats.steps);
      }
    }
    stats.t = last ? t_end : stats.t + dt;
  }
  return stats;
}

double max_wave_speed(std::span<const double> u, int degree, const std::vector<MetricSet>& metrics,
                      double gamma) {
  const auto np = static_cast<std::size_t>(degree + 1);
  const std::size_t nn = np * np * np;
  double lambda = 0.0;
  for (std::size_t e = 0; e < metrics.size(); ++e) {
    const MetricSet& ms = metrics[e];
    const std::size_t base = e * kNumVars * nn;
    for (std::size_t p = 0; p < nn; ++p) {
      const Cons q{u[base + p], u[base + nn + p], u[base + 2 * nn + p], u[base + 3 * nn + p],
                   u[base + 4 * nn + p]};
      const double c = sound_speed(q, gamma);
      const Vec3 v{q[1] / q[0], q[2] / q[0], q[3] / q[0]};
      const double inv_j = 1.0 / ms.jac[p];
      // summed over the reference directions; the max over s is not stable
      // at CFL 0.2 once N >= 14
      double sum = 0.0;
      for (std::size_t s = 0; s < 3; ++s) {
        const Vec3 a{ms.ja[s][0][p] * inv_j, ms.ja[s][1][p] * inv_j, ms.ja[s][2][p] * inv_j};
        const double vn = v[0] * a[0] + v[1] * a[1] + v[2] * a[2];
        const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        sum += std::abs(vn) + c * norm;
      }
      lambda = std::max(lambda, sum);
    }
  }
  return lambda;
}

double compute_dt(std::span<const double> u, int degree, const std::vector<MetricSet>& metrics,
                  double gamma, double cfl) {
  const double lambda = max_wave_speed(u, degree, metrics, gamma);
  return cfl * 2.0 / (lambda * (degree + 1));
}

double compute_dt(const EulerState& u, const std::vector<MetricSet>& metrics, double gamma,
                  double cfl) {
  return compute_dt(u.data, u.degree, metrics, gamma, cfl);
}

IntegrationStats integrate_euler(EulerState& u, const DgsemOperator& op, double t_end, double cfl) {
  const RhsFunction rhs = [&op](std::span<const double> x, double, std::span<double> dx) {
    op.rhs(x, dx);
  };
  const StepSizeFunction dt_fn = [&](std::span<const double> x) {
    return compute_dt(x, op.degree(), op.metrics(), op.gamma(), cfl);
  };
  return integrate(u.data, rhs, t_end, dt_fn);
}

}  // namespace mdg
