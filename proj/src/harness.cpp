#include "mimetic_dg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "mimetic_dg/timeint.hpp"

namespace mdg {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Mesh3D make_warped_mesh(const std::array<int, 3>& dims, double amplitude) {
  return Mesh3D(dims, std::make_shared<WarpedCosineMap>(amplitude));
}

std::vector<ExperimentRecord> run_fsp_sweep(const SweepConfig& config) {
  std::vector<ExperimentRecord> out;
  const Mesh3D mesh = make_warped_mesh(config.mesh, config.amplitude);
  for (MetricMethod method : config.methods) {
    for (int n : config.degrees) {
      const auto start = std::chrono::steady_clock::now();
      const std::string name(method_name(method));
      try {
        auto metrics = compute_mesh_metrics(method, mesh, n, {config.pathway, 0});
        const DgsemOperator op(mesh, metrics, config.gamma);
        EulerState u = constant_state(n, mesh.element_count(), kFreeStreamState);
        integrate_euler(u, op, config.t_end, config.cfl);
        const auto errors = fsp_error(u, kFreeStreamState, op.metrics(), config.eval_points);
        const double wall = config.record_time ? seconds_since(start) : 0.0;
        for (std::size_t v = 0; v < kNumVars; ++v) {
          out.push_back({name, n, kVariableNames[v], errors[v].l2, errors[v].linf, wall, false});
        }
      } catch (const DivergenceError&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.push_back({name, n, "diverged", nan, nan, config.record_time ? seconds_since(start) : 0.0,
                       true});
      } catch (const InvalidStateError&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.push_back({name, n, "diverged", nan, nan, config.record_time ? seconds_since(start) : 0.0,
                       true});
      }
    }
  }
  return out;
}

std::vector<ExperimentRecord> run_metric_error_sweep(const SweepConfig& config) {
  std::vector<ExperimentRecord> out;
  const Mesh3D mesh = make_warped_mesh(config.mesh, config.amplitude);
  for (MetricMethod method : config.methods) {
    for (int n : config.degrees) {
      const auto start = std::chrono::steady_clock::now();
      const auto metrics = compute_mesh_metrics(method, mesh, n, {config.pathway, 0});
      const ErrorNorms err = metric_error_norms(metrics, mesh, config.eval_points);
      out.push_back({std::string(method_name(method)), n, "metrics", err.l2, err.linf,
                     config.record_time ? seconds_since(start) : 0.0, false});
    }
  }
  return out;
}

std::vector<IdentityCheck> run_identity_check(const SweepConfig& config, double tolerance) {
  std::vector<IdentityCheck> out;
  const Mesh3D mesh = make_warped_mesh(config.mesh, config.amplitude);
  for (MetricMethod method : config.methods) {
    for (int n : config.degrees) {
      const auto metrics = compute_mesh_metrics(method, mesh, n, {config.pathway, 0});
      const DefectNorms d = metric_defect(metrics);
      out.push_back({method, n, d, d.max_scaled <= tolerance});
    }
  }
  return out;
}

void sort_records(std::vector<ExperimentRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.method, a.degree, a.quantity) < std::tie(b.method, b.degree, b.quantity);
  });
}

std::string format_csv(std::vector<ExperimentRecord> records) {
  sort_records(records);
  std::string s = "method,N,quantity,l2_error,linf_error,walltime_s\n";
  for (const auto& r : records) {
    s += r.method + "," + std::to_string(r.degree) + "," + r.quantity + "," +
         format_double(r.l2_error) + "," + format_double(r.linf_error) + "," +
         format_double(r.walltime_s) + "\n";
  }
  return s;
}

void emit_csv(const std::vector<ExperimentRecord>& records, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << format_csv(records);
  f.close();
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::vector<ExperimentRecord> parse_csv(std::istream& in) {
  std::vector<ExperimentRecord> out;
  std::string line;
  if (!std::getline(in, line)) return out;
  if (line != "method,N,quantity,l2_error,linf_error,walltime_s") {
    throw std::runtime_error("unexpected CSV header: " + line);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() != 6) throw std::runtime_error("malformed CSV row: " + line);
    ExperimentRecord r;
    r.method = cols[0];
    r.degree = std::stoi(cols[1]);
    r.quantity = cols[2];
    r.l2_error = std::strtod(cols[3].c_str(), nullptr);
    r.linf_error = std::strtod(cols[4].c_str(), nullptr);
    r.walltime_s = std::strtod(cols[5].c_str(), nullptr);
    r.failed = r.quantity == "diverged";
    out.push_back(std::move(r));
  }
  return out;
}

std::string gnuplot_script(const std::filesystem::path& csv, const std::string& title) {
  const std::string f = csv.string();
  std::ostringstream s;
  s << "# usage: gnuplot " << f << ".gp\n"
    << "set datafile separator ','\n"
    << "set logscale y\n"
    << "set format y '10^{%L}'\n"
    << "set xlabel 'N'\n"
    << "set key outside\n"
    << "set title '" << title << "'\n"
    << "set terminal pngcairo size 1200,500\n"
    << "set output '" << f << ".png'\n"
    << "set multiplot layout 1,2\n";
  for (const char* col : {"4", "5"}) {
    s << "set ylabel '" << (std::string(col) == "4" ? "L2" : "Linf") << " error'\n"
      << "plot for [m in 'cross kopriva mimetic-blue mimetic-red'] '" << f
      << "' using (strcol(1) eq m && (strcol(3) eq 'rho_e' || strcol(3) eq 'metrics') ? $2 : 1/0):"
      << col << " with linespoints title m\n";
  }
  s << "unset multiplot\n";
  return s.str();
}

}  // namespace mdg
