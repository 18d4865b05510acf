#ifndef MIMETIC_DG_HARNESS_HPP_
#define MIMETIC_DG_HARNESS_HPP_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mimetic_dg/euler.hpp"
#include "mimetic_dg/metrics.hpp"

namespace mdg {

/// One data point of a sweep. Failed runs carry NaN errors and the
/// quantity name "diverged".
struct ExperimentRecord {
  std::string method;
  int degree = 0;
  std::string quantity;
  double l2_error = 0.0;
  double linf_error = 0.0;
  double walltime_s = 0.0;
  bool failed = false;
};

struct SweepConfig {
  std::vector<int> degrees;
  std::vector<MetricMethod> methods;
  std::array<int, 3> mesh{2, 2, 2};
  double amplitude = 0.1;
  double gamma = 1.4;
  double cfl = 0.2;
  double t_end = 1.0;
  GeometryPathway pathway = GeometryPathway::Interpolated;
  int eval_points = 51;
  bool record_time = true;  // false writes 0 walltimes, giving byte-identical reruns
};

inline constexpr std::array<const char*, kNumVars> kVariableNames{"rho", "rho_v1", "rho_v2",
                                                                  "rho_v3", "rho_e"};

Mesh3D make_warped_mesh(const std::array<int, 3>& dims, double amplitude);

/// Constant free-stream state integrated to t_end on the warped periodic
/// mesh; one record per conservative variable.
std::vector<ExperimentRecord> run_fsp_sweep(const SweepConfig& config);

/// Metric-term error norms against the analytic metrics; quantity "metrics".
std::vector<ExperimentRecord> run_metric_error_sweep(const SweepConfig& config);

struct IdentityCheck {
  MetricMethod method;
  int degree;
  DefectNorms defect;
  bool pass;
};
std::vector<IdentityCheck> run_identity_check(const SweepConfig& config, double tolerance);

/// Sorted by method, N, quantity.
void sort_records(std::vector<ExperimentRecord>& records);
std::string format_csv(std::vector<ExperimentRecord> records);
void emit_csv(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path);
std::vector<ExperimentRecord> parse_csv(std::istream& in);

/// Log-scale plot of l2/linf against N for every method in a CSV file.
std::string gnuplot_script(const std::filesystem::path& csv, const std::string& title);

}  // namespace mdg

#endif  // MIMETIC_DG_HARNESS_HPP_
