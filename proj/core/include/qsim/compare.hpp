// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/compare.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qsim
{
//! The fields of one summary.json run that a comparison needs.
struct RunSummary
{
    std::string policy;
    std::uint64_t seed{0};
    std::string fingerprint;
    double total_throughput_bps{0};
    std::optional<double> jfi;
    std::optional<double> qoe_fi;
};

struct SeedComparison
{
    std::uint64_t seed{0};
    double reference_throughput_bps{0};
    double baseline_throughput_bps{0};
    double throughput_ratio{0};
    std::optional<double> reference_jfi;
    std::optional<double> baseline_jfi;
    std::optional<double> reference_qoe_fi;
    std::optional<double> baseline_qoe_fi;
    bool higher_throughput{false};
    bool fairer_qoe{false};
};

//! The reference policy against one baseline policy.
struct PolicyComparison
{
    std::string baseline;
    std::vector<SeedComparison> seeds;
    double mean_reference_throughput_bps{0};
    double mean_baseline_throughput_bps{0};
    //! Ratio of the mean throughputs
    double throughput_ratio{0};
    std::optional<double> mean_reference_qoe_fi;
    std::optional<double> mean_baseline_qoe_fi;
    std::optional<double> mean_reference_jfi;
    std::optional<double> mean_baseline_jfi;
    bool higher_throughput{false};
    bool fairer_qoe{false};
    std::int64_t seeds_higher_throughput{0};
    std::int64_t seeds_fairer_qoe{0};
};

struct Comparison
{
    //! BCQQ when present, else the first policy seen
    std::string reference;
    std::vector<PolicyComparison> baselines;
};

/*!
 * Compare the reference policy with every other policy, seed by seed.
 *
 * Requires at least two policies, a common scenario fingerprint, and the
 * same seed set for every policy; throws std::invalid_argument otherwise.
 */
Comparison compare(std::span<RunSummary const> runs);

//! Extract run summaries from summary.json text.
std::vector<RunSummary> read_run_summaries(std::string const& summary_json_text);

//! Load <dir>/summary.json; IoError if it cannot be read.
std::vector<RunSummary> load_run_summaries(std::filesystem::path const& dir);

std::string comparison_json(Comparison const& cmp);
//! Human-readable table
std::string comparison_table(Comparison const& cmp);

//---------------------------------------------------------------------------//
}  // namespace qsim
