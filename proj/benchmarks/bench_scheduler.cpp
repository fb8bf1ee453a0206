// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>
#include <random>
#include <vector>

#include "qsim/scheduler.hpp"

using namespace qsim;

namespace
{
std::vector<UeSchedRecord> make_inputs(std::size_t n)
{
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<UeSchedRecord> in(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        auto& u = in[i];
        u.ue = static_cast<UeId>(i + 1);
        u.buffersize_bits = 40'000'000;
        u.buffer_bits = static_cast<Bits>(unit(gen) * 40'000'000);
        u.alpha = 1e-6;
        u.beta_s = 0.15 + 0.15 * unit(gen);
        u.q = 1 + 99 * unit(gen);
        u.rate_bps = 1e8 + 5.9e9 * unit(gen);
        u.hol_delay_s = 0.1 * unit(gen);
        u.avg_rate_bps = 1e8 + 1e9 * unit(gen);
    }
    return in;
}

void BM_Select(benchmark::State& state, Policy policy)
{
    auto const in = make_inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(select(in, policy));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
}  // namespace

BENCHMARK_CAPTURE(BM_Select, bcqq, Policy::bcqq)->Arg(5)->Arg(64)->Arg(1024);
BENCHMARK_CAPTURE(BM_Select, mlwdf, Policy::mlwdf)->Arg(5)->Arg(64)->Arg(1024);
BENCHMARK_CAPTURE(BM_Select, pf, Policy::pf)->Arg(5)->Arg(64)->Arg(1024);
