// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file compare.cpp
//---------------------------------------------------------------------------//
#include "qsim/compare.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qsim/error.hpp"
#include "qsim/report_io.hpp"

namespace qsim
{
namespace
{
using nlohmann::json;

std::optional<double> mean_of(std::vector<std::optional<double>> const& xs)
{
    double sum = 0;
    for (auto const& x : xs)
    {
        if (!x)
            return std::nullopt;
        sum += *x;
    }
    if (xs.empty())
        return std::nullopt;
    return sum / static_cast<double>(xs.size());
}

bool strictly_lower(std::optional<double> a, std::optional<double> b)
{
    return a && b && *a < *b;
}

json opt(std::optional<double> v)
{
    return v ? json(round_to_written(*v)) : json(nullptr);
}

std::string cell(std::optional<double> v)
{
    return v ? format_real(*v) : std::string{"-"};
}
}  // namespace

Comparison compare(std::span<RunSummary const> runs)
{
    if (runs.empty())
        throw std::invalid_argument("no runs to compare");

    std::string const& fingerprint = runs.front().fingerprint;
    std::vector<std::string> policies;
    std::map<std::string, std::map<std::uint64_t, RunSummary const*>> by_policy;
    for (auto const& r : runs)
    {
        if (r.fingerprint != fingerprint)
            throw std::invalid_argument(
                "runs come from different scenarios (fingerprint "
                + r.fingerprint + " vs " + fingerprint + ")");
        if (!by_policy.contains(r.policy))
            policies.push_back(r.policy);
        if (!by_policy[r.policy].emplace(r.seed, &r).second)
            throw std::invalid_argument("duplicate run for policy " + r.policy
                                        + " seed " + std::to_string(r.seed));
    }
    if (policies.size() < 2)
        throw std::invalid_argument("comparison needs at least two policies");

    Comparison result;
    result.reference = std::find(policies.begin(), policies.end(), "BCQQ")
                               != policies.end()
                           ? "BCQQ"
                           : policies.front();
    auto const& ref_runs = by_policy.at(result.reference);

    for (auto const& policy : policies)
    {
        if (policy == result.reference)
            continue;
        auto const& base_runs = by_policy.at(policy);
        std::set<std::uint64_t> ref_seeds, base_seeds;
        for (auto const& [seed, _] : ref_runs)
            ref_seeds.insert(seed);
        for (auto const& [seed, _] : base_runs)
            base_seeds.insert(seed);
        if (ref_seeds != base_seeds)
            throw std::invalid_argument("policies " + result.reference + " and "
                                        + policy + " were run on different seeds");

        PolicyComparison pc;
        pc.baseline = policy;
        std::vector<std::optional<double>> rq, bq, rj, bj;
        for (auto const& [seed, ref] : ref_runs)
        {
            auto const* base = base_runs.at(seed);
            SeedComparison sc;
            sc.seed = seed;
            sc.reference_throughput_bps = ref->total_throughput_bps;
            sc.baseline_throughput_bps = base->total_throughput_bps;
            sc.throughput_ratio = ref->total_throughput_bps
                                  / base->total_throughput_bps;
            sc.reference_jfi = ref->jfi;
            sc.baseline_jfi = base->jfi;
            sc.reference_qoe_fi = ref->qoe_fi;
            sc.baseline_qoe_fi = base->qoe_fi;
            sc.higher_throughput = ref->total_throughput_bps
                                   > base->total_throughput_bps;
            sc.fairer_qoe = strictly_lower(ref->qoe_fi, base->qoe_fi);

            pc.mean_reference_throughput_bps += sc.reference_throughput_bps;
            pc.mean_baseline_throughput_bps += sc.baseline_throughput_bps;
            pc.seeds_higher_throughput += sc.higher_throughput ? 1 : 0;
            pc.seeds_fairer_qoe += sc.fairer_qoe ? 1 : 0;
            rq.push_back(ref->qoe_fi);
            bq.push_back(base->qoe_fi);
            rj.push_back(ref->jfi);
            bj.push_back(base->jfi);
            pc.seeds.push_back(sc);
        }
        auto const n = static_cast<double>(pc.seeds.size());
        pc.mean_reference_throughput_bps /= n;
        pc.mean_baseline_throughput_bps /= n;
        pc.throughput_ratio = pc.mean_reference_throughput_bps
                              / pc.mean_baseline_throughput_bps;
        pc.mean_reference_qoe_fi = mean_of(rq);
        pc.mean_baseline_qoe_fi = mean_of(bq);
        pc.mean_reference_jfi = mean_of(rj);
        pc.mean_baseline_jfi = mean_of(bj);
        pc.higher_throughput = pc.mean_reference_throughput_bps
                               > pc.mean_baseline_throughput_bps;
        pc.fairer_qoe = strictly_lower(pc.mean_reference_qoe_fi,
                                       pc.mean_baseline_qoe_fi);
        result.baselines.push_back(std::move(pc));
    }
    return result;
}

std::vector<RunSummary> read_run_summaries(std::string const& text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        throw SyntaxError(std::string("summary is not valid JSON: ") + e.what());
    }
    std::vector<RunSummary> result;
    try
    {
        for (auto const& r : doc.at("runs"))
        {
            RunSummary s;
            s.policy = r.at("policy").get<std::string>();
            s.seed = r.at("seed").get<std::uint64_t>();
            s.fingerprint = r.at("scenario_fingerprint").get<std::string>();
            s.total_throughput_bps = r.at("total_throughput_bps").get<double>();
            if (!r.at("jfi").is_null())
                s.jfi = r.at("jfi").get<double>();
            if (!r.at("qoe_fi").is_null())
                s.qoe_fi = r.at("qoe_fi").get<double>();
            result.push_back(std::move(s));
        }
    }
    catch (json::exception const& e)
    {
        throw ConfigError("runs", std::string("malformed summary: ") + e.what());
    }
    return result;
}

std::vector<RunSummary> load_run_summaries(std::filesystem::path const& dir)
{
    auto const path = dir / "summary.json";
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_run_summaries(ss.str());
}

std::string comparison_json(Comparison const& cmp)
{
    json doc;
    doc["reference"] = cmp.reference;
    json list = json::array();
    for (auto const& pc : cmp.baselines)
    {
        json jp;
        jp["baseline"] = pc.baseline;
        jp["mean_reference_throughput_bps"]
            = round_to_written(pc.mean_reference_throughput_bps);
        jp["mean_baseline_throughput_bps"]
            = round_to_written(pc.mean_baseline_throughput_bps);
        jp["throughput_ratio"] = round_to_written(pc.throughput_ratio);
        jp["mean_reference_qoe_fi"] = opt(pc.mean_reference_qoe_fi);
        jp["mean_baseline_qoe_fi"] = opt(pc.mean_baseline_qoe_fi);
        jp["mean_reference_jfi"] = opt(pc.mean_reference_jfi);
        jp["mean_baseline_jfi"] = opt(pc.mean_baseline_jfi);
        jp["higher_throughput"] = pc.higher_throughput;
        jp["fairer_qoe"] = pc.fairer_qoe;
        jp["seeds_higher_throughput"] = pc.seeds_higher_throughput;
        jp["seeds_fairer_qoe"] = pc.seeds_fairer_qoe;
        json seeds = json::array();
        for (auto const& sc : pc.seeds)
        {
            seeds.push_back(
                {{"seed", sc.seed},
                 {"reference_throughput_bps",
                  round_to_written(sc.reference_throughput_bps)},
                 {"baseline_throughput_bps",
                  round_to_written(sc.baseline_throughput_bps)},
                 {"throughput_ratio", round_to_written(sc.throughput_ratio)},
                 {"reference_jfi", opt(sc.reference_jfi)},
                 {"baseline_jfi", opt(sc.baseline_jfi)},
                 {"reference_qoe_fi", opt(sc.reference_qoe_fi)},
                 {"baseline_qoe_fi", opt(sc.baseline_qoe_fi)},
                 {"higher_throughput", sc.higher_throughput},
                 {"fairer_qoe", sc.fairer_qoe}});
        }
        jp["seeds"] = std::move(seeds);
        list.push_back(std::move(jp));
    }
    doc["baselines"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string comparison_table(Comparison const& cmp)
{
    std::ostringstream out;
    for (auto const& pc : cmp.baselines)
    {
        out << cmp.reference << " vs " << pc.baseline << '\n';
        out << "  seed  thr_ratio    jfi_ref    jfi_base   qoefi_ref  qoefi_base\n";
        for (auto const& sc : pc.seeds)
        {
            char line[160];
            std::snprintf(line, sizeof(line),
                          "  %-5llu %-12s %-10s %-10s %-10s %-10s\n",
                          static_cast<unsigned long long>(sc.seed),
                          format_real(sc.throughput_ratio).c_str(),
                          cell(sc.reference_jfi).c_str(),
                          cell(sc.baseline_jfi).c_str(),
                          cell(sc.reference_qoe_fi).c_str(),
                          cell(sc.baseline_qoe_fi).c_str());
            out << line;
        }
        out << "  mean  throughput " << format_real(pc.mean_reference_throughput_bps)
            << " vs " << format_real(pc.mean_baseline_throughput_bps)
            << " bps (ratio " << format_real(pc.throughput_ratio) << ")\n";
        out << "  mean  QoE_FI " << cell(pc.mean_reference_qoe_fi) << " vs "
            << cell(pc.mean_baseline_qoe_fi) << ", JFI "
            << cell(pc.mean_reference_jfi) << " vs "
            << cell(pc.mean_baseline_jfi) << '\n';
        out << "  " << cmp.reference << " higher throughput: "
            << (pc.higher_throughput ? "yes" : "no") << " ("
            << pc.seeds_higher_throughput << "/" << pc.seeds.size()
            << " seeds); fairer QoE_FI: " << (pc.fairer_qoe ? "yes" : "no")
            << " (" << pc.seeds_fairer_qoe << "/" << pc.seeds.size()
            << " seeds)\n";
    }
    return out.str();
}

//---------------------------------------------------------------------------//
}  // namespace qsim
