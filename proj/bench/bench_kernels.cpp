// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "mimetic_dg/euler.hpp"
#include "mimetic_dg/harness.hpp"
#include "mimetic_dg/metrics.hpp"
#include "mimetic_dg/reference.hpp"

using namespace mdg;

namespace {

EulerState wavy_state(const Mesh3D& mesh, int n) {
  const QuadRule1D rule(n);
  EulerState u(n, mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    const ElementMapping em = mesh.element_mapping(e);
    std::size_t p = 0;
    for (std::size_t k = 0; k < rule.size(); ++k)
      for (std::size_t j = 0; j < rule.size(); ++j)
        for (std::size_t i = 0; i < rule.size(); ++i, ++p) {
          const Point3 g = em.to_global_reference({rule.node(i), rule.node(j), rule.node(k)});
          Cons s = kFreeStreamState;
          s[0] += 0.1 * std::sin(std::numbers::pi * g[0]);
          s[4] += 0.5 * std::cos(std::numbers::pi * g[1]);
          u.set_node(e, p, s);
        }
  }
  return u;
}

struct Setup {
  Mesh3D mesh;
  std::vector<MetricSet> metrics;
  EulerState u;
  explicit Setup(int n)
      : mesh(make_warped_mesh({3, 3, 3}, 0.1)),
        metrics(compute_mesh_metrics(MetricMethod::MimeticBlue, mesh, n)),
        u(wavy_state(mesh, n)) {}
};

void BM_RhsStrongParallel(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  const DgsemOperator op(s.mesh, s.metrics);
  EulerState out = s.u;
  for (auto _ : state) {
    op.rhs(s.u.data, out.data);
    benchmark::DoNotOptimize(out.data.data());
  }
}

void BM_RhsWeakSerial(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    EulerState out = reference::dgsem_rhs_weak(s.u, s.mesh, s.metrics);
    benchmark::DoNotOptimize(out.data.data());
  }
}

void BM_MeshMetricsParallel(benchmark::State& state) {
  const Mesh3D mesh = make_warped_mesh({2, 2, 2}, 0.1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto m = compute_mesh_metrics(MetricMethod::MimeticBlue, mesh, n);
    benchmark::DoNotOptimize(m.data());
  }
}

void BM_MeshMetricsSerial(benchmark::State& state) {
  const Mesh3D mesh = make_warped_mesh({2, 2, 2}, 0.1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto m = compute_mesh_metrics_serial(MetricMethod::MimeticBlue, mesh, n);
    benchmark::DoNotOptimize(m.data());
  }
}

}  // namespace

BENCHMARK(BM_RhsStrongParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RhsWeakSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeshMetricsParallel)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeshMetricsSerial)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
