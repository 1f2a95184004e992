// Serial reference path against the OpenMP path for the hot kernels.
// Arg 0 is Exec::Serial, 1 is Exec::Parallel.
#include <benchmark/benchmark.h>

#include <cmath>

#include "grl/geometry/generators.hpp"
#include "grl/geometry/measure.hpp"
#include "grl/greensolve/laplace.hpp"
#include "grl/kelvin/kelvin.hpp"
#include "grl/radial/hemisphere.hpp"

using namespace grl;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

const geometry::TriMesh& mesh() {
  static const auto m = geometry::gen_icosphere(6, Vec3(0, 0, 1), 1.0);
  return m;
}

const radial::HemisphereGrid& grid() {
  static const auto g = radial::HemisphereGrid::from_function(
      0.05, 256, 256, [](double th, double ph) { return std::log(2 * std::sin(th)) + 0.1 * std::sin(3 * ph) * std::cos(th); });
  return g;
}

void BM_Assemble(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(greensolve::assemble(mesh(), exec_of(state)));
}

void BM_Multiply(benchmark::State& state) {
  const auto op = greensolve::assemble(mesh());
  greensolve::Vector x = greensolve::Vector::Ones(op.stiffness.rows), y;
  for (auto _ : state) {
    op.stiffness.multiply(x, y, exec_of(state));
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_VertexGeometry(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(geometry::vertex_geometry(mesh(), exec_of(state)));
}

void BM_PdeResidual(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(radial::pde_residual(grid(), exec_of(state)));
}

void BM_PdeJacobian(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(radial::pde_jacobian(grid(), exec_of(state)));
}

void BM_KelvinFd(benchmark::State& state) {
  const auto e = geometry::ParamSurface::ellipsoid(Vec3(0, 0, 1.5), Vec3(1, 1, 1.5));
  const auto pts = e.sample_grid(128, 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(kelvin::curvature_correspondence_residual(
        e, pts, kelvin::CurvatureMethod::FiniteDifference, kelvin::kDefaultFdStep, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_Assemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Multiply)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_VertexGeometry)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PdeResidual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PdeJacobian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KelvinFd)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
