#include <benchmark/benchmark.h>

#include <numeric>

#include "ybx/brace.hpp"
#include "ybx/constructions.hpp"
#include "ybx/probe.hpp"
#include "ybx/solution.hpp"

using namespace ybx;

namespace {

JFamily sixteen_point_family() {
    FinAbGroup v4 = FinAbGroup::parse("Z2xZ2");
    GroupAut t = GroupAut::from_matrix(v4, {{0, 1}, {1, 1}});
    std::vector<int> j(4);
    std::iota(j.begin(), j.end(), 0);
    return JFamily::make(v4, t, j);
}

void BM_validate_16(benchmark::State& state) {
    JFamily jf = sixteen_point_family();
    for (auto _ : state)
        benchmark::DoNotOptimize(construct_newsol(jf));
}
BENCHMARK(BM_validate_16);

void BM_simplicity_16(benchmark::State& state) {
    Solution s = construct_newsol(sixteen_point_family());
    for (auto _ : state)
        benchmark::DoNotOptimize(is_simple_solution(s).simple);
}
BENCHMARK(BM_simplicity_16);

void BM_congruence_closure_36(benchmark::State& state) {
    FinAbGroup z6 = FinAbGroup::parse("Z6");
    std::vector<int> j{0, 1, 2, 3, 2, 1};
    Solution s = construct_newsol(JFamily::make(z6, GroupAut::identity(z6), j));
    CongruenceCloser closer;
    int y = 1;
    for (auto _ : state) {
        closer.reset(s.size());
        closer.seed(0, y);
        benchmark::DoNotOptimize(closer.close(s.sigma_flat(), true));
        y = y % (s.size() - 1) + 1;
    }
}
BENCHMARK(BM_congruence_closure_36);

void BM_brace_from_solution_96(benchmark::State& state) {
    Solution s = construct_newsol(sixteen_point_family());
    for (auto _ : state)
        benchmark::DoNotOptimize(brace_from_solution(s).brace.size());
}
BENCHMARK(BM_brace_from_solution_96);

void BM_brace_validation_24(benchmark::State& state) {
    SimpleFamily fam = construct_simple_family(2, {{3, 1}});
    std::vector<std::vector<int>> add(24, std::vector<int>(24));
    std::vector<std::vector<int>> mul(24, std::vector<int>(24));
    for (int x = 0; x < 24; ++x)
        for (int y = 0; y < 24; ++y) {
            add[x][y] = fam.brace.add(x, y);
            mul[x][y] = fam.brace.mul(x, y);
        }
    for (auto _ : state)
        benchmark::DoNotOptimize(FiniteBrace::make(add, mul).size());
}
BENCHMARK(BM_brace_validation_24);

void BM_probe_order4(benchmark::State& state) {
    FinAbGroup v4 = FinAbGroup::parse("Z2xZ2");
    GroupAut id = GroupAut::identity(v4);
    for (auto _ : state)
        benchmark::DoNotOptimize(probe_converse(v4, id).families_total);
}
BENCHMARK(BM_probe_order4);

} // namespace

BENCHMARK_MAIN();
