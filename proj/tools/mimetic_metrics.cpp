// Experiment driver: free-stream sweeps, metric error sweeps, metric identity
// checks and a basis self-test. Exit codes: 0 success, 1 tolerance failure,
// 2 configuration error, 3 solver divergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mimetic_dg/harness.hpp"
#include "mimetic_dg/metrics.hpp"
#include "mimetic_dg/polybasis.hpp"

namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int degree = 0;
  std::string degree_range;
  int max_degree = 0;
  std::vector<std::string> methods;
  std::string mesh = "2x2x2";
  double cfl = 0.2;
  double t_end = 1.0;
  double amplitude = 0.1;
  std::string geometry = "interpolated";
  int eval_points = 51;
  std::string out;
  bool no_timing = false;
  bool gnuplot = false;
  double tolerance = 1e-11;
  unsigned seed = 12345;
};

std::vector<int> degrees_from(const Options& o) {
  if (o.degree > 0) return {o.degree};
  int lo = 2, hi = 15;
  if (!o.degree_range.empty()) {
    std::smatch m;
    static const std::regex re(R"((\d+)[:\-](\d+))");
    if (!std::regex_match(o.degree_range, m, re)) {
      throw ConfigError("--degree-range expects LO:HI, got '" + o.degree_range + "'");
    }
    lo = std::stoi(m[1]);
    hi = std::stoi(m[2]);
  } else if (o.max_degree > 0) {
    hi = o.max_degree;
  }
  if (lo < 1 || hi < lo || hi > 25) throw ConfigError("degrees must satisfy 1 <= LO <= HI <= 25");
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

mdg::SweepConfig sweep_from(const Options& o, std::vector<std::string> default_methods) {
  mdg::SweepConfig c;
  c.degrees = degrees_from(o);
  for (const auto& name : o.methods.empty() ? default_methods : o.methods) {
    const auto m = mdg::parse_method(name);
    if (!m) throw ConfigError("unknown method '" + name + "'");
    c.methods.push_back(*m);
  }
  std::smatch m;
  static const std::regex mesh_re(R"((\d+)x(\d+)x(\d+))");
  if (!std::regex_match(o.mesh, m, mesh_re)) throw ConfigError("--mesh expects AxBxC, got '" + o.mesh + "'");
  for (int d = 0; d < 3; ++d) {
    c.mesh[static_cast<std::size_t>(d)] = std::stoi(m[d + 1]);
    if (c.mesh[static_cast<std::size_t>(d)] < 1) throw ConfigError("mesh dimensions must be >= 1");
  }
  if (o.geometry == "interpolated") {
    c.pathway = mdg::GeometryPathway::Interpolated;
  } else if (o.geometry == "analytic") {
    c.pathway = mdg::GeometryPathway::Analytic;
  } else {
    throw ConfigError("--geometry must be interpolated or analytic");
  }
  if (!(o.cfl > 0.0)) throw ConfigError("--cfl must be positive");
  if (!(o.t_end >= 0.0)) throw ConfigError("--t-end must be nonnegative");
  if (o.eval_points < 2) throw ConfigError("--eval-points must be >= 2");
  for (int n : c.degrees)
    if (o.eval_points < n + 1) throw ConfigError("--eval-points must be at least N+1");
  c.cfl = o.cfl;
  c.t_end = o.t_end;
  c.amplitude = o.amplitude;
  c.eval_points = o.eval_points;
  c.record_time = !o.no_timing;
  return c;
}

void write_output(const std::vector<mdg::ExperimentRecord>& records, const Options& o,
                  const std::string& title) {
  if (o.out.empty()) {
    std::cout << mdg::format_csv(records);
    return;
  }
  mdg::emit_csv(records, o.out);
  if (o.gnuplot) {
    std::ofstream gp(o.out + ".gp");
    gp << mdg::gnuplot_script(o.out, title);
  }
  std::cerr << "wrote " << records.size() << " records to " << o.out << "\n";
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--degree", o.degree, "single polynomial degree N");
  app->add_option("--degree-range", o.degree_range, "degree range LO:HI (default 2:15)");
  app->add_option("--max-degree", o.max_degree, "upper end of the default range (<= 25)");
  app->add_option("--method", o.methods, "cross, kopriva, mimetic-blue, mimetic-red (repeatable)");
  app->add_option("--mesh", o.mesh, "elements per direction, e.g. 2x2x2");
  app->add_option("--amplitude", o.amplitude, "warped-cosine amplitude");
  app->add_option("--geometry", o.geometry, "interpolated or analytic");
  app->add_option("--eval-points", o.eval_points, "LGL points per direction for error norms");
  app->add_option("--out", o.out, "CSV output path (stdout if omitted)");
  app->add_flag("--no-timing", o.no_timing, "write zero walltimes (byte-identical reruns)");
  app->add_flag("--gnuplot", o.gnuplot, "write a gnuplot script next to the CSV");
  app->add_option("--seed", o.seed, "seed for randomized checks");
}

int bases_selftest(const Options& o) {
  const int max_n = o.max_degree > 0 ? o.max_degree : 25;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  bool ok = true;
  for (int n = 1; n <= max_n; ++n) {
    const mdg::QuadRule1D rule(n);
    double quad_err = 0.0;
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weight(i) * std::pow(rule.node(i), k);
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      quad_err = std::max(quad_err, std::abs(sum - exact) / std::max(1.0, std::abs(exact)));
    }
    const mdg::EdgeBasis1D edges(rule);
    double delta_err = 0.0;
    for (int i = 1; i <= n; ++i) {
      const auto ints = mdg::subinterval_integrals(
          rule, [&](double x) { return edges.eval(i, x); }, n + 2);
      for (int j = 1; j <= n; ++j)
        delta_err = std::max(delta_err, std::abs(ints[static_cast<std::size_t>(j - 1)] - (i == j ? 1.0 : 0.0)));
    }
    // histopolation of a random polynomial of degree N-1
    std::vector<double> coef(static_cast<std::size_t>(n));
    for (auto& c : coef) c = unif(rng);
    auto q = [&](double x) {
      double v = 0.0;
      for (auto it = coef.rbegin(); it != coef.rend(); ++it) v = v * x + *it;
      return v;
    };
    const auto ints = mdg::subinterval_integrals(rule, q, n + 2);
    double hist_err = 0.0;
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int t = 0; t < 100; ++t) {
      const double x = unif(rng);
      edges.eval_all(x, h);
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += ints[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)];
      hist_err = std::max(hist_err, std::abs(v - q(x)));
    }
    const bool pass = quad_err <= 1e-12 && delta_err <= 1e-12 && hist_err <= 1e-12;
    ok = ok && pass;
    std::printf("N=%2d  quadrature %.3e  delta %.3e  histopolation %.3e  %s\n", n, quad_err,
                delta_err, hist_err, pass ? "ok" : "FAIL");
  }
  return ok ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mimetic metric terms for the DGSEM: experiment driver"};
  app.require_subcommand(1);
  Options o;

  auto* fsp = app.add_subcommand("fsp-sweep", "free-stream preservation sweep of the Euler solver");
  add_common(fsp, o);
  fsp->add_option("--cfl", o.cfl, "CFL number");
  fsp->add_option("--t-end", o.t_end, "end time");

  auto* merr = app.add_subcommand("metric-errors", "metric-term error against analytic metrics");
  add_common(merr, o);

  auto* ident = app.add_subcommand("check-identities", "discrete metric identities (divergence)");
  add_common(ident, o);
  ident->add_option("--tolerance", o.tolerance, "scaled divergence tolerance");

  auto* bases = app.add_subcommand("bases-selftest", "LGL, edge polynomial and histopolation checks");
  bases->add_option("--max-degree", o.max_degree, "largest N to check (default 25)");
  bases->add_option("--seed", o.seed, "seed for random test points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*fsp) {
      const auto cfg = sweep_from(o, {"kopriva", "mimetic-blue"});
      const auto records = mdg::run_fsp_sweep(cfg);
      write_output(records, o, "free-stream error of rho e");
      const bool diverged = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.failed; });
      return diverged ? kExitDivergence : 0;
    }
    if (*merr) {
      const auto cfg = sweep_from(o, {"cross", "kopriva", "mimetic-blue", "mimetic-red"});
      write_output(mdg::run_metric_error_sweep(cfg), o, "metric-term error");
      return 0;
    }
    if (*ident) {
      const auto cfg = sweep_from(o, {"kopriva", "mimetic-blue", "mimetic-red"});
      bool ok = true;
      for (const auto& c : mdg::run_identity_check(cfg, o.tolerance)) {
        std::printf("%-13s N=%2d  defect %.3e  scaled %.3e  %s\n",
                    std::string(mdg::method_name(c.method)).c_str(), c.degree, c.defect.max_raw,
                    c.defect.max_scaled, c.pass ? "ok" : "FAIL");
        ok = ok && c.pass;
      }
      return ok ? 0 : kExitTolerance;
    }
    if (*bases) return bases_selftest(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
