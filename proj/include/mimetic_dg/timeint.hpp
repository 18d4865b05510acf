#ifndef MIMETIC_DG_TIMEINT_HPP_
#define MIMETIC_DG_TIMEINT_HPP_

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mimetic_dg/euler.hpp"

namespace mdg {

/// 2N-storage explicit Runge-Kutta scheme:
///   k  <- a_i k + dt f(u, t + c_i dt)
///   u  <- u + b_i k
struct LsrkScheme {
  std::array<double, 5> a;
  std::array<double, 5> b;
  std::array<double, 5> c;

  /// Carpenter & Kennedy (1994), five-stage fourth-order, solution 3.
  static const LsrkScheme& carpenter_kennedy_54();
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

using RhsFunction = std::function<void(std::span<const double> u, double t, std::span<double> dudt)>;
using StepSizeFunction = std::function<double(std::span<const double> u)>;

/// One LSRK step in place; `stage` is scratch of the same size as u.
void lsrk_step(std::vector<double>& u, std::vector<double>& stage, std::vector<double>& k, double t,
               double dt, const RhsFunction& rhs, const LsrkScheme& scheme);

struct IntegrationStats {
  long steps = 0;
  double t = 0.0;
};

/// Integrates to exactly t = t_end; dt is recomputed before every step and
/// the final step is shortened to land on t_end.
IntegrationStats integrate(std::vector<double>& u, const RhsFunction& rhs, double t_end,
                           const StepSizeFunction& dt_fn,
                           const LsrkScheme& scheme = LsrkScheme::carpenter_kennedy_54());

/// Largest geometry-scaled wave speed: max over nodes of the sum over
/// reference directions s of |v . a~^s| + c |a~^s|, a~^s = Ja^s / J.
double max_wave_speed(std::span<const double> u, int degree, const std::vector<MetricSet>& metrics,
                      double gamma);

/// dt = CFL * 2 / (lambda_max (N + 1)).
double compute_dt(std::span<const double> u, int degree, const std::vector<MetricSet>& metrics,
                  double gamma, double cfl);
double compute_dt(const EulerState& u, const std::vector<MetricSet>& metrics, double gamma, double cfl);

/// Integrates the DGSEM semi-discretization with the CFL step size.
IntegrationStats integrate_euler(EulerState& u, const DgsemOperator& op, double t_end, double cfl);

}  // namespace mdg

#endif  // MIMETIC_DG_TIMEINT_HPP_
