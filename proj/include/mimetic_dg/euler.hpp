#ifndef MIMETIC_DG_EULER_HPP_
#define MIMETIC_DG_EULER_HPP_

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "mimetic_dg/geometry.hpp"
#include "mimetic_dg/metrics.hpp"

namespace mdg {

inline constexpr int kNumVars = 5;

/// Conservative variables (rho, rho v1, rho v2, rho v3, rho e).
using Cons = std::array<double, kNumVars>;

class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nodal conservative variables, stored element by element and variable by
/// variable: data[(e * 5 + var) * nodes + node].
struct EulerState {
  int degree = 0;
  int elements = 0;
  std::vector<double> data;

  EulerState() = default;
  EulerState(int degree, int elements);

  std::size_t nodes_per_element() const;
  std::size_t offset(int e, int var) const { return (static_cast<std::size_t>(e) * kNumVars + var) * nodes_per_element(); }
  Cons node(int e, std::size_t p) const;
  void set_node(int e, std::size_t p, const Cons& u);
};

EulerState constant_state(int degree, int elements, const Cons& u);

/// Free-stream initial data: rho = 1, rho v = (0.1, -0.2, 0.7), rho e = 10.
inline constexpr Cons kFreeStreamState{1.0, 0.1, -0.2, 0.7, 10.0};

double pressure(const Cons& u, double gamma);
double sound_speed(const Cons& u, double gamma);

/// d-th Cartesian flux column of the Euler equations, d in {0, 1, 2}.
Cons physical_flux(const Cons& u, int d, double gamma);

/// Local Lax-Friedrichs flux through a scaled normal n:
/// 1/2 (F(uL) + F(uR)) . n - 1/2 lambda (uR - uL),
/// lambda = max over both states of |v . n| + c |n|.
Cons rusanov_flux(const Cons& ul, const Cons& ur, const Vec3& n, double gamma);

enum class NumericalFlux { Rusanov };

struct SolverConfig {
  int degree = 3;
  std::array<int, 3> mesh{2, 2, 2};
  MetricMethod method = MetricMethod::MimeticBlue;
  GeometryPathway pathway = GeometryPathway::Interpolated;
  double amplitude = 0.1;
  double gamma = 1.4;
  double cfl = 0.2;
  double t_end = 1.0;
  NumericalFlux flux = NumericalFlux::Rusanov;

  void validate() const;
};

/**
 * @brief Strong-form collocated DGSEM operator on a periodic conforming mesh.
 *
 * J du/dt = -( sum_s D F~^s + sum_faces (1/w) (F* - F~ . n) ) with contravariant
 * fluxes F~^s = sum_n Ja^s_n F_n. Each element uses its own face metric terms
 * as normals. Elements are processed in parallel; the input state is only
 * read, neighbor face values included.
 */
class DgsemOperator {
 public:
  DgsemOperator(const Mesh3D& mesh, std::vector<MetricSet> metrics, double gamma = 1.4);

  int degree() const { return rule_.degree(); }
  double gamma() const { return gamma_; }
  const QuadRule1D& rule() const { return rule_; }
  const Mesh3D& mesh() const { return *mesh_; }
  const std::vector<MetricSet>& metrics() const { return metrics_; }
  const std::vector<std::array<FaceNeighbor, 6>>& neighbors() const { return neighbors_; }

  void rhs(std::span<const double> u, std::span<double> dudt) const;
  EulerState rhs(const EulerState& u) const;

 private:
  void element_rhs(int e, std::span<const double> u, std::span<double> dudt) const;

  const Mesh3D* mesh_;
  std::vector<MetricSet> metrics_;
  double gamma_;
  QuadRule1D rule_;
  std::vector<std::array<FaceNeighbor, 6>> neighbors_;
};

EulerState dgsem_rhs(const EulerState& u, const Mesh3D& mesh, const std::vector<MetricSet>& metrics,
                     double gamma = 1.4);

/// Per-variable error of u against a constant state on a P-point LGL grid
/// per element: J-weighted L2 normalized by volume and max pointwise error.
std::array<ErrorNorms, kNumVars> fsp_error(const EulerState& u, const Cons& reference,
                                           const std::vector<MetricSet>& metrics,
                                           int eval_points = 51);

}  // namespace mdg

#endif  // MIMETIC_DG_EULER_HPP_
