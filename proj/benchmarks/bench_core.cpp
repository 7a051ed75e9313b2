#include <benchmark/benchmark.h>

#include <complex>

#include "optomech/dynamics.hpp"
#include "optomech/fock.hpp"
#include "optomech/polariton.hpp"

using namespace optomech;

namespace {

SystemParams bench_params() {
    SystemParams p;
    p.omega_0 = 10.0;
    p.omega_c = 10.5;
    p.omega_m = 1.0;
    p.mass = 1.0;
    p.eta = 0.3;
    p.g_total = 3.0;
    return p;
}

void BM_EffectiveCoeffs(benchmark::State& state) {
    const auto p = bench_params();
    const ModeIndex n{0, 2};
    for (auto _ : state)
        benchmark::DoNotOptimize(effective_coeffs(p, n));
}
BENCHMARK(BM_EffectiveCoeffs);

void BM_LoschmidtEcho(benchmark::State& state) {
    const auto p = bench_params();
    const auto cn = effective_coeffs(p, ModeIndex{0, 1});
    const auto cm = effective_coeffs(p, ModeIndex{1, 0});
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        benchmark::DoNotOptimize(loschmidt_echo(cn, cm, t));
    }
}
BENCHMARK(BM_LoschmidtEcho);

void BM_HeisenbergPropagator(benchmark::State& state) {
    const auto p = bench_params();
    const auto coeffs = effective_coeffs(p, ModeIndex{0, 2});
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        benchmark::DoNotOptimize(heisenberg_propagator(p, coeffs, t));
    }
}
BENCHMARK(BM_HeisenbergPropagator);

void BM_MirrorHamiltonianBuild(benchmark::State& state) {
    const auto p = bench_params();
    const ModeIndex n{0, 2};
    const fock::FockSpace space{static_cast<int>(state.range(0)), 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(fock::build_mirror_hamiltonian(p, n, space));
}
BENCHMARK(BM_MirrorHamiltonianBuild)->Arg(64)->Arg(128)->Arg(256);

void BM_Eigendecomposition(benchmark::State& state) {
    const auto p = bench_params();
    const fock::FockSpace space{static_cast<int>(state.range(0)), 1};
    const auto h = fock::build_mirror_hamiltonian(p, ModeIndex{0, 2}, space);
    for (auto _ : state)
        benchmark::DoNotOptimize(fock::HermitianEvolver(h));
}
BENCHMARK(BM_Eigendecomposition)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EvolveAcrossGrid(benchmark::State& state) {
    const auto p = bench_params();
    const fock::FockSpace space{128, 1};
    const fock::HermitianEvolver evolver(
        fock::build_mirror_hamiltonian(p, ModeIndex{0, 2}, space));
    const auto vac = fock::vacuum(space);
    double t = 0.0;
    for (auto _ : state) {
        t += 0.05;
        benchmark::DoNotOptimize(evolver.psi_at(vac, t));
    }
}
BENCHMARK(BM_EvolveAcrossGrid);

void BM_TripartiteBuild(benchmark::State& state) {
    const auto p = bench_params();
    const fock::FockSpace space{static_cast<int>(state.range(0)), 3};
    for (auto _ : state)
        benchmark::DoNotOptimize(fock::build_tripartite_hamiltonian(p, space));
}
BENCHMARK(BM_TripartiteBuild)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
