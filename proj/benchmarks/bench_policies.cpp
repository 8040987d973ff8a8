#include <benchmark/benchmark.h>

#include "susched/baselines.hpp"
#include "susched/engine.hpp"
#include "susched/policies.hpp"
#include "susched/workload.hpp"

namespace {

using namespace susched;

std::vector<Job> bench_jobs(std::size_t n, double fraction) {
    return generate({n, 0.04, 1.1, fraction, false, 42});
}

void BM_RunFcfs(benchmark::State& state) {
    auto jobs = bench_jobs(static_cast<std::size_t>(state.range(0)), 0.0);
    for (auto _ : state) {
        FcfsPolicy fcfs;
        benchmark::DoNotOptimize(run(jobs, fcfs));
    }
}
BENCHMARK(BM_RunFcfs)->Arg(1000)->Arg(10000);

void BM_RunUdsu(benchmark::State& state) {
    auto jobs = bench_jobs(static_cast<std::size_t>(state.range(0)), 0.3);
    for (auto _ : state) {
        UdsuPolicy udsu;
        benchmark::DoNotOptimize(run(jobs, udsu));
    }
}
BENCHMARK(BM_RunUdsu)->Arg(1000)->Arg(10000);

// The forwardability walk makes this the most expensive selector.
void BM_RunNubsu(benchmark::State& state) {
    auto jobs = bench_jobs(static_cast<std::size_t>(state.range(0)), 0.3);
    for (auto _ : state) {
        NubsuPolicy nubsu;
        benchmark::DoNotOptimize(run(jobs, nubsu));
    }
}
BENCHMARK(BM_RunNubsu)->Arg(1000)->Arg(10000);

void BM_RunSrpt(benchmark::State& state) {
    auto jobs = bench_jobs(static_cast<std::size_t>(state.range(0)), 0.0);
    for (auto _ : state) {
        SrptPolicy srpt;
        benchmark::DoNotOptimize(run(jobs, srpt, 1.0));
    }
}
BENCHMARK(BM_RunSrpt)->Arg(1000)->Arg(10000);

void BM_PsRun(benchmark::State& state) {
    auto jobs = bench_jobs(static_cast<std::size_t>(state.range(0)), 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ps_run(jobs));
    }
}
BENCHMARK(BM_PsRun)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
