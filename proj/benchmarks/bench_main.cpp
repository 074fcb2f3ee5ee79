#include <benchmark/benchmark.h>

#include <cmath>

#include "swanson/swanson.hpp"

namespace {

using namespace swanson;

Model pstar() { return Model::with_gauge(solve_forward(1.0, 1.0, 1.0), 0.5, 0.1, -2.0); }

numeric::RealFn plus_potential(const Model& m) {
    return [m](double z) { return potentials::eval_potential_z(potentials::Side::plus, potentials::Form::z_canonical, z, m); };
}

void BM_JetExpPow(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const Jet x = Jet::variable(0.7, order);
        benchmark::DoNotOptimize(pow(x, 1.5) * exp(-0.5 * x * x));
    }
}
BENCHMARK(BM_JetExpPow)->Arg(2)->Arg(6)->Arg(10);

void BM_Laguerre(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(specialfn::laguerre(n, 1.5, 3.25));
}
BENCHMARK(BM_Laguerre)->Arg(4)->Arg(12);

void BM_PhiPlus(benchmark::State& state) {
    const auto fp = solve_forward(1.0, 1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(spectrum::phi_plus(fp, 5, 0.8));
}
BENCHMARK(BM_PhiPlus);

void BM_TridiagEigs(benchmark::State& state) {
    const auto sys = numeric::fd_discretize(plus_potential(pstar()), 1e-3, 10.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(numeric::tridiag_eigs(sys, 4));
}
BENCHMARK(BM_TridiagEigs)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_RefineExtrapolate(benchmark::State& state) {
    const auto v = plus_potential(pstar());
    for (auto _ : state) benchmark::DoNotOptimize(numeric::refine_extrapolate(v, 3, {2000, 4000}, 1e-3, 10.0));
}
BENCHMARK(BM_RefineExtrapolate)->Unit(benchmark::kMillisecond);

void BM_QuadHalfline(benchmark::State& state) {
    const auto fp = solve_forward(1.0, 1.0, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(spectrum::j_integral(fp, 3, 3, spectrum::JMethod::quadrature));
}
BENCHMARK(BM_QuadHalfline)->Unit(benchmark::kMicrosecond);

void BM_ComposeResidual(benchmark::State& state) {
    const Model m = pstar();
    const auto xs = diffop::generic_sample_points(20);
    const auto A = diffop::build(diffop::OpKind::A, m), Ad = diffop::build(diffop::OpKind::A_dag, m);
    const auto hm = diffop::build(diffop::OpKind::h_minus, m);
    for (auto _ : state) benchmark::DoNotOptimize(diffop::residual(hm, diffop::compose(Ad, A), xs));
}
BENCHMARK(BM_ComposeResidual)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
