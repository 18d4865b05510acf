#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mimetic_dg/harness.hpp"

using namespace mdg;

namespace {

const char* kHeader = "method,N,quantity,l2_error,linf_error,walltime_s\n";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty records give a header-only CSV") {
  CHECK(format_csv({}) == kHeader);
  const auto path = std::filesystem::temp_directory_path() / "mdg_empty.csv";
  emit_csv({}, path);
  CHECK(read_file(path) == kHeader);
  std::filesystem::remove(path);
}

TEST_CASE("records are sorted by method, N and quantity") {
  std::vector<ExperimentRecord> r{{"mimetic-blue", 3, "rho", 1, 2, 0, false},
                                  {"kopriva", 10, "rho_e", 1, 2, 0, false},
                                  {"kopriva", 2, "rho_v1", 1, 2, 0, false},
                                  {"kopriva", 2, "rho", 1, 2, 0, false}};
  sort_records(r);
  CHECK(r[0].quantity == "rho");
  CHECK(r[1].quantity == "rho_v1");
  CHECK(r[2].degree == 10);
  CHECK(r[3].method == "mimetic-blue");
}

TEST_CASE("CSV round trip keeps every bit") {
  std::vector<ExperimentRecord> r{{"kopriva", 4, "rho_e", 1.0 / 3.0, 2.220446049250313e-16, 0.125, false},
                                  {"cross", 4, "diverged", std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::quiet_NaN(), 0.0, true}};
  const std::string csv = format_csv(r);
  CHECK(csv.rfind(kHeader, 0) == 0);
  std::istringstream in(csv);
  const auto back = parse_csv(in);
  REQUIRE(back.size() == 2);
  // sorted: cross first
  CHECK(back[0].method == "cross");
  CHECK(back[0].failed);
  CHECK(std::isnan(back[0].l2_error));
  CHECK(back[1].l2_error == 1.0 / 3.0);
  CHECK(back[1].linf_error == 2.220446049250313e-16);
  CHECK(back[1].walltime_s == 0.125);
  CHECK(format_csv(back) == csv);

  std::istringstream bad("a,b,c\n");
  CHECK_THROWS(parse_csv(bad));
}

TEST_CASE("emit_csv reports unwritable paths") {
  CHECK_THROWS(emit_csv({}, "/nonexistent-dir/sub/out.csv"));
}

TEST_CASE("empty degree list gives no records") {
  SweepConfig c;
  c.methods = {MetricMethod::MimeticBlue};
  CHECK(run_fsp_sweep(c).empty());
  CHECK(run_metric_error_sweep(c).empty());
  CHECK(run_identity_check(c, 1e-11).empty());
}

TEST_CASE("free-stream sweep at N = 3") {
  SweepConfig c;
  c.degrees = {3};
  c.methods = {MetricMethod::MimeticBlue};
  c.record_time = false;
  c.eval_points = 11;
  const auto r = run_fsp_sweep(c);
  REQUIRE(r.size() == kNumVars);
  bool saw_rho_e = false;
  for (const auto& rec : r) {
    CHECK(rec.method == "mimetic-blue");
    CHECK(rec.degree == 3);
    CHECK_FALSE(rec.failed);
    CHECK(rec.walltime_s == 0.0);
    CHECK(rec.linf_error <= 1e-11);
    if (rec.quantity == "rho_e") saw_rho_e = true;
  }
  CHECK(saw_rho_e);
  // reruns are byte-identical without timing
  CHECK(format_csv(run_fsp_sweep(c)) == format_csv(r));
}

TEST_CASE("cross-product metrics on the exact geometry lose free-stream preservation") {
  SweepConfig c;
  c.degrees = {4};
  c.methods = {MetricMethod::CrossInterp};
  c.pathway = GeometryPathway::Analytic;
  c.t_end = 0.2;
  c.eval_points = 11;
  const auto r = run_fsp_sweep(c);
  double worst = 0.0;
  for (const auto& rec : r) worst = std::max(worst, rec.linf_error);
  CHECK(worst > 1e-8);
}

TEST_CASE("metric error sweep") {
  SweepConfig c;
  c.degrees = {4, 8};
  c.methods = {MetricMethod::KoprivaCurl, MetricMethod::MimeticRed};
  c.record_time = false;
  c.eval_points = 15;
  const auto r = run_metric_error_sweep(c);
  REQUIRE(r.size() == 4);
  for (const auto& rec : r) CHECK(rec.quantity == "metrics");
  // sorted, and errors drop with N
  CHECK(r[0].method == "kopriva");
  CHECK(r[1].l2_error < r[0].l2_error);
  CHECK(r[3].l2_error < r[2].l2_error);
}

TEST_CASE("identity check") {
  SweepConfig c;
  c.degrees = {2, 5};
  c.methods = {MetricMethod::KoprivaCurl, MetricMethod::MimeticBlue};
  const auto checks = run_identity_check(c, 1e-11);
  REQUIRE(checks.size() == 4);
  for (const auto& ch : checks) {
    CHECK(ch.pass);
    CHECK(ch.defect.max_scaled <= 1e-11);
  }
  c.pathway = GeometryPathway::Analytic;
  c.methods = {MetricMethod::CrossInterp};
  c.degrees = {4};
  const auto fail = run_identity_check(c, 1e-11);
  REQUIRE(fail.size() == 1);
  CHECK_FALSE(fail[0].pass);
}

TEST_CASE("gnuplot script names the data file") {
  const std::string s = gnuplot_script("out.csv", "free stream");
  CHECK(s.find("out.csv") != std::string::npos);
  CHECK(s.find("logscale y") != std::string::npos);
}
