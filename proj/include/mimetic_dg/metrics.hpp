#ifndef MIMETIC_DG_METRICS_HPP_
#define MIMETIC_DG_METRICS_HPP_

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mimetic_dg/geometry.hpp"
#include "mimetic_dg/mimetic.hpp"

namespace mdg {

/**
 * Ways to build discrete metric terms.
 *
 *  - CrossInterp: cross products of collocation derivatives at the nodes.
 *    Not divergence free for curved elements unless the map degree is <= N/2.
 *  - KoprivaCurl: collocation curl of the interpolated field
 *    1/2 (x_l grad x_m - x_m grad x_l).
 *  - MimeticBlue: collocation curl of p2(x_m grad x_l).
 *  - MimeticRed: p3(grad x_m x grad x_l) = p3(curl(x_m grad x_l)).
 *
 * All produce Ja^i_n = e_i . curl(x_m grad x_l) with (n, m, l) cyclic, which
 * equals the cross-product definition.
 */
enum class MetricMethod { CrossInterp, KoprivaCurl, MimeticBlue, MimeticRed };

inline constexpr MetricMethod kAllMetricMethods[] = {
    MetricMethod::CrossInterp, MetricMethod::KoprivaCurl, MetricMethod::MimeticBlue,
    MetricMethod::MimeticRed};

std::string_view method_name(MetricMethod method);
std::optional<MetricMethod> parse_method(std::string_view name);

class DegenerateElementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricOptions {
  GeometryPathway pathway = GeometryPathway::Interpolated;
  // 0 with the interpolated pathway: exact polynomial sampling (2N + 1 points
  // per direction). Otherwise composite Gauss with this many points per
  // sub-interval, 0 meaning N + 2.
  int points_per_interval = 0;
};

MetricSet metrics_cross_interp(const Mapping3D& map, int degree, const MetricOptions& opts = {});
MetricSet metrics_kopriva_curl(const Mapping3D& map, int degree, const MetricOptions& opts = {});
MetricSet metrics_mimetic_blue(const Mapping3D& map, int degree, const MetricOptions& opts = {});
MetricSet metrics_mimetic_red(const Mapping3D& map, int degree, const MetricOptions& opts = {});

MetricSet compute_metrics(MetricMethod method, const Mapping3D& map, int degree,
                          const MetricOptions& opts = {});

/// Metric terms for every element; element-parallel.
std::vector<MetricSet> compute_mesh_metrics(MetricMethod method, const Mesh3D& mesh, int degree,
                                            const MetricOptions& opts = {});
/// Serial element loop, same per-element kernel.
std::vector<MetricSet> compute_mesh_metrics_serial(MetricMethod method, const Mesh3D& mesh,
                                                   int degree, const MetricOptions& opts = {});

/// Discrete divergence of one metric row (Ja^1_n, Ja^2_n, Ja^3_n).
NodalScalar3D divergence_defect(const QuadRule1D& rule, const NodalVector3D& row);

struct DefectNorms {
  double max_raw = 0.0;     // max over rows and nodes
  double ja_max = 0.0;      // max |Ja^i_n|
  double max_scaled = 0.0;  // max_raw / (1 + ja_max)
};
DefectNorms metric_defect(const MetricSet& metrics);
DefectNorms metric_defect(const std::vector<MetricSet>& metrics);

struct ErrorNorms {
  double l2 = 0.0;
  double linf = 0.0;
};

/// Error of the nine metric entries against the analytic ones, on a
/// P-point LGL grid per element. L2 uses the Euclidean norm of the 9-vector
/// and the J-weighted LGL rule normalized by volume; Linf the max-abs entry.
ErrorNorms metric_error_norms(const std::vector<MetricSet>& computed, const Mesh3D& mesh,
                              int eval_points = 51);

/// Largest disagreement of the face-normal metric vector between the two
/// elements sharing each face.
double face_metric_mismatch(const Mesh3D& mesh, const std::vector<MetricSet>& metrics);

// ---------------------------------------------------------------------------
// Two dimensions. Arrays use TensorArray with dims (N+1, N+1, 1).

struct MetricSet2D {
  int degree = 0;
  std::array<std::array<TensorArray, 2>, 2> ja;  // ja[i][n] = Ja^i_n
  TensorArray jac;
};

/// Nodal interpolant of a 2D scalar.
TensorArray project_p1_2d(const std::function<double(const Point2&)>& f, const QuadRule1D& rule);

/// curl_v(f) = (df/deta, -df/dxi) by collocation.
std::array<TensorArray, 2> curl_v_collocation(const QuadRule1D& rule, const TensorArray& s);

/// Ja^1 = (y_eta, -x_eta), Ja^2 = (-y_xi, x_xi) from the interpolated map:
/// row 1 is curl_v(p1(y)), row 2 is curl_v(p1(-x)).
MetricSet2D metrics_2d(const Mapping2D& map, int degree);

/// d_xi Ja^1_n + d_eta Ja^2_n at the nodes.
TensorArray divergence_defect_2d(const QuadRule1D& rule, const MetricSet2D& m, int n);

struct MetricValues2D {
  Mat2 ja{};
  double jac = 0.0;
};
MetricValues2D analytic_metrics_2d(const Mapping2D& map, const Point2& xi);

}  // namespace mdg

#endif  // MIMETIC_DG_METRICS_HPP_
