#include <benchmark/benchmark.h>

#include "latfusion/constructions.hpp"
#include "latfusion/f2algebra.hpp"
#include "latfusion/lattice.hpp"
#include "latfusion/modcat.hpp"
#include "latfusion/permgroup.hpp"
#include "latfusion/qseries.hpp"

using namespace latfusion;

static void BM_vectors_of_norm_e8(benchmark::State& state) {
    Lattice L = builtin("E8");
    Coset z = L.zero_coset();
    for (auto _ : state) benchmark::DoNotOptimize(vectors_of_norm(z, Rat(4)));
}
BENCHMARK(BM_vectors_of_norm_e8);

static void BM_norm_histogram_bw16(benchmark::State& state) {
    Lattice L = builtin("BW16");
    Coset z = L.zero_coset();
    for (auto _ : state) benchmark::DoNotOptimize(norm_histogram(z, Rat(state.range(0))));
}
BENCHMARK(BM_norm_histogram_bw16)->Arg(4)->Arg(8);

static void BM_theta_sqrt2e8(benchmark::State& state) {
    Lattice L = builtin("sqrt2E8");
    Coset z = L.zero_coset();
    for (auto _ : state) benchmark::DoNotOptimize(theta_series(z, Rat(state.range(0))));
}
BENCHMARK(BM_theta_sqrt2e8)->Arg(6)->Arg(10);

static void BM_theta_identity_rank8(benchmark::State& state) {
    Lattice L = builtin("sqrt2E8");
    for (auto _ : state)
        benchmark::DoNotOptimize(check_theta_identity(L, Rat(state.range(0))));
}
BENCHMARK(BM_theta_identity_rank8)->Arg(6)->Arg(10);

static void BM_build_fusion_space(benchmark::State& state) {
    Lattice L = builtin("sqrt2E8");
    for (auto _ : state) benchmark::DoNotOptimize(build_fusion_space(L));
}
BENCHMARK(BM_build_fusion_space);

static void BM_detect_construction_b(benchmark::State& state) {
    Lattice L = builtin("sqrt2E8");
    for (auto _ : state) benchmark::DoNotOptimize(detect_construction_b(L));
}
BENCHMARK(BM_detect_construction_b);

static void BM_schreier_sims_o_plus(benchmark::State& state) {
    F2QuadSpace q = standard_quad_space(static_cast<int>(state.range(0)), 1);
    std::vector<Perm> gens = transvection_generators(q);
    for (auto _ : state) benchmark::DoNotOptimize(schreier_sims(gens));
}
BENCHMARK(BM_schreier_sims_o_plus)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_group_order_parse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(group_order("2^16 * Omega+_10(2)"));
}
BENCHMARK(BM_group_order_parse);

BENCHMARK_MAIN();
