#include "nrlab/biot_savart.hpp"
#include "nrlab/boundary_integral.hpp"
#include "nrlab/euler_sim.hpp"
#include "nrlab/lagrangian.hpp"
#include "nrlab/random_fields.hpp"

#include <benchmark/benchmark.h>

using namespace nrlab;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::OpenMP : Exec::Serial; }

std::vector<Vec2> ring_points(const PolarGrid& g) {
    std::vector<Vec2> p;
    for (int j = 0; j < g.n_theta(); ++j) p.push_back(g.node(g.n_r() / 2, j));
    return p;
}

// Direct-sum v~ at one ring of nodes; arg0 = n_r (n_theta = 4 n_r), arg1 = OpenMP.
void BM_VtildeDirect(benchmark::State& st) {
    const PolarGrid g(static_cast<int>(st.range(0)), static_cast<int>(4 * st.range(0)));
    const ScalarField w = random_band_limited(g, 1);
    const auto pts = ring_points(g);
    for (auto _ : st) benchmark::DoNotOptimize(vtilde_quadrature(w, pts, exec_of(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(pts.size() * g.size()));
}
BENCHMARK(BM_VtildeDirect)->Args({32, 0})->Args({32, 1})->Args({64, 0})->Args({64, 1})->Unit(benchmark::kMillisecond);

void BM_VtildeGridFFT(benchmark::State& st) {
    const PolarGrid g(static_cast<int>(st.range(0)), static_cast<int>(4 * st.range(0)));
    const VtildeGridOperator op(g);
    const ScalarField w = random_band_limited(g, 1);
    std::vector<double> vr(g.size()), vt(g.size());
    for (auto _ : st) {
        op.apply(w, vr, vt);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_VtildeGridFFT)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_AssembleKernel(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto q1 = boundary_quadrature(Circle::Inner, n);
    const auto q2 = boundary_quadrature(Circle::Outer, n);
    for (auto _ : st) benchmark::DoNotOptimize(assemble_kernel(q1, q2, exec_of(st)));
}
BENCHMARK(BM_AssembleKernel)->Args({256, 0})->Args({256, 1})->Args({512, 0})->Args({512, 1})->Unit(benchmark::kMillisecond);

void BM_SemiLagrangianStep(benchmark::State& st) {
    SimConfig c;
    c.n_r = static_cast<int>(st.range(0));
    c.n_theta = 4 * c.n_r;
    c.dt = 1e-3;
    c.exec = exec_of(st);
    const EulerSimulator sim(c);
    const ScalarField w = bump_field(sim.grid()).scaled(0.25);
    const GridVelocity v = sim.velocity(w);
    for (auto _ : st) benchmark::DoNotOptimize(sim.advect(w, v, c.dt));
}
BENCHMARK(BM_SemiLagrangianStep)->Args({64, 0})->Args({64, 1})->Unit(benchmark::kMillisecond);

void BM_VelocitySolveGrid(benchmark::State& st) {
    const VelocitySolver solver(PolarGrid(static_cast<int>(st.range(0)), static_cast<int>(4 * st.range(0))));
    const ScalarField w = random_band_limited(solver.grid(), 2);
    for (auto _ : st) benchmark::DoNotOptimize(solver.solve_grid(w, Circulation{kTwoPi}));
}
BENCHMARK(BM_VelocitySolveGrid)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_MarkerAdvection(benchmark::State& st) {
    std::vector<Vec2> pts;
    for (int k = 0; k < 2000; ++k) pts.push_back(from_polar(1.0 + k / 2000.0, 0.1 * k));
    const RotationVelocity u;
    for (auto _ : st) benchmark::DoNotOptimize(advect_points(pts, u, 0.0, 0.1, 1e-2, exec_of(st)));
}
BENCHMARK(BM_MarkerAdvection)->Args({0, 0})->Args({0, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
