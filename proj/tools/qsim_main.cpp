// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim_main.cpp
//! Command-line driver: policy/seed sweeps and policy comparison.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qsim/compare.hpp"
#include "qsim/engine.hpp"
#include "qsim/error.hpp"
#include "qsim/report_io.hpp"

namespace fs = std::filesystem;

namespace
{
constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_io = 2;

struct RunArgs
{
    std::string scenario;
    std::vector<std::string> policies;
    std::vector<std::uint64_t> seeds;
    std::int64_t duration_ms{0};
    std::string out;
    bool trace{false};
    std::int64_t window_ms{-1};
    unsigned jobs{0};
};

struct CompareArgs
{
    std::vector<std::string> inputs;
    std::string out;
};

fs::path trace_path(fs::path const& dir, qsim::Scenario const& s, bool single)
{
    if (single)
        return dir / "trace.csv";
    return dir
           / ("trace_" + std::string(qsim::to_string(s.policy)) + "_"
              + std::to_string(s.seed) + ".csv");
}

int do_run(RunArgs const& args)
{
    qsim::Scenario base = qsim::load_scenario(args.scenario);
    if (args.duration_ms > 0)
        base.duration_tti = args.duration_ms;
    if (args.window_ms >= 0)
        base.window_tti = args.window_ms;

    std::vector<qsim::Policy> policies;
    for (auto const& p : args.policies)
        policies.push_back(qsim::policy_from_string(p));
    if (policies.empty())
        policies.push_back(base.policy);
    std::vector<std::uint64_t> seeds = args.seeds;
    if (seeds.empty())
        seeds.push_back(base.seed);

    std::vector<qsim::Scenario> plan;
    for (auto policy : policies)
    {
        for (auto seed : seeds)
        {
            qsim::Scenario s = base;
            s.policy = policy;
            s.seed = seed;
            plan.push_back(qsim::validated(std::move(s)));
        }
    }

    fs::path const out_dir{args.out};
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw qsim::IoError("cannot create output directory '"
                            + out_dir.string() + "': " + ec.message());

    bool const single = plan.size() == 1;
    std::vector<qsim::RunResult> results(plan.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < plan.size(); i = next++)
        {
            try
            {
                qsim::SimReport report;
                if (args.trace)
                {
                    qsim::TraceWriter writer(
                        trace_path(out_dir, plan[i], single));
                    report = qsim::run(plan[i], [&writer](qsim::TraceRow const& r) {
                        writer.write(r);
                    });
                    writer.close();
                }
                else
                {
                    report = qsim::run(plan[i]);
                }
                results[i] = qsim::RunResult{plan[i], std::move(report)};
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    unsigned jobs = args.jobs ? args.jobs : std::thread::hardware_concurrency();
    jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(plan.size()));
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);

    qsim::emit(results, out_dir);
    for (auto const& r : results)
    {
        std::cout << r.report.policy << " seed " << r.report.seed
                  << ": throughput " << qsim::format_real(r.report.total_throughput_bps)
                  << " bps, JFI "
                  << (r.report.jfi ? qsim::format_real(*r.report.jfi) : "-")
                  << ", QoE_FI "
                  << (r.report.qoe_fi ? qsim::format_real(*r.report.qoe_fi) : "-")
                  << '\n';
    }
    return exit_ok;
}

int do_compare(CompareArgs const& args)
{
    std::vector<qsim::RunSummary> runs;
    for (auto const& dir : args.inputs)
    {
        auto part = qsim::load_run_summaries(dir);
        runs.insert(runs.end(), part.begin(), part.end());
    }
    auto const cmp = qsim::compare(runs);
    std::cout << qsim::comparison_table(cmp);
    fs::path const out = args.out.empty() ? fs::path{args.inputs.front()}
                                          : fs::path{args.out};
    qsim::write_text_file(out / "comparison.json", qsim::comparison_json(cmp));
    return exit_ok;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Single-cell downlink scheduling simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run a scenario for each policy and seed");
    run->add_option("--scenario", run_args.scenario, "Scenario JSON file")
        ->required();
    run->add_option("--policy", run_args.policies, "BCQQ, MLWDF, PF, RR")
        ->delimiter(',');
    run->add_option("--seed", run_args.seeds, "Seeds")->delimiter(',');
    run->add_option("--duration-ms", run_args.duration_ms,
                    "Override the scenario duration")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", run_args.out, "Output directory")->required();
    run->add_flag("--trace", run_args.trace, "Write the per-TTI trace");
    run->add_option("--window-ms", run_args.window_ms,
                    "Metrics window length (0 = whole run)")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--jobs", run_args.jobs, "Concurrent runs (default: cores)");

    CompareArgs cmp_args;
    auto* cmp = app.add_subcommand("compare", "Compare policies in summary.json");
    cmp->add_option("--in", cmp_args.inputs, "Run output directory")
        ->required();
    cmp->add_option("--out", cmp_args.out,
                    "Where to write comparison.json (default: first --in)");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try
    {
        if (*run)
            return do_run(run_args);
        return do_compare(cmp_args);
    }
    catch (qsim::IoError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (qsim::SyntaxError const& e)
    {
        std::cerr << "syntax error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (qsim::ConfigError const& e)
    {
        std::cerr << "validation error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
}
