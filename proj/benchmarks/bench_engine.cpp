// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qsim/engine.hpp"
#include "qsim/report_io.hpp"

using namespace qsim;

namespace
{
Scenario scenario(Policy policy)
{
    auto s = load_scenario(QSIM_SCENARIO_DIR "/table1.json");
    s.policy = policy;
    s.duration_tti = 1'000'000'000;
    return s;
}

// Steady-state cost of one TTI of the five-UE cell.
void BM_Step(benchmark::State& state, Policy policy)
{
    Simulation sim{scenario(policy)};
    for (auto _ : state)
        benchmark::DoNotOptimize(sim.step());
    state.SetItemsProcessed(state.iterations());
}

void BM_FullRun(benchmark::State& state)
{
    auto s = scenario(Policy::bcqq);
    s.duration_tti = 30'000;
    for (auto _ : state)
        benchmark::DoNotOptimize(run(s));
}
}  // namespace

BENCHMARK_CAPTURE(BM_Step, bcqq, Policy::bcqq);
BENCHMARK_CAPTURE(BM_Step, mlwdf, Policy::mlwdf);
BENCHMARK_CAPTURE(BM_Step, rr, Policy::rr);
BENCHMARK(BM_FullRun)->Unit(benchmark::kMillisecond);
