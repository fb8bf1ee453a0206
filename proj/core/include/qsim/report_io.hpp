// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/report_io.hpp
//! Scenario ingestion and bit-stable output files.
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>

#include "engine.hpp"
#include "metrics.hpp"
#include "scenario.hpp"

namespace qsim
{
//---------------------------------------------------------------------------//
// SCENARIOS
//---------------------------------------------------------------------------//

/*!
 * Parse and validate a JSON scenario.
 *
 * Throws SyntaxError when the text is not JSON and ConfigError (naming the
 * key) for unknown keys, wrong types, or semantic violations.
 */
Scenario parse_scenario(std::string_view text);

//! Read and parse a scenario file; IoError if it cannot be read.
Scenario load_scenario(std::filesystem::path const& path);

//! Canonical JSON text for a scenario (parse_scenario accepts it back).
std::string scenario_to_json(Scenario const& scenario);

/*!
 * Stable identity of everything in a scenario except policy and seed.
 *
 * Two runs with equal fingerprints are comparable.
 */
std::string scenario_fingerprint(Scenario const& scenario);

//---------------------------------------------------------------------------//
// OUTPUT FORMATTING
//---------------------------------------------------------------------------//

//! Reals are written with 9 significant digits ("%.9g").
std::string format_real(double value);

//! Round a real to the precision it is written with.
double round_to_written(double value);

inline constexpr std::string_view trace_header
    = "tti,ue,cqi,rate_bps,buffer_bits,q,priority,selected,tx_bits,"
      "dropped_deadline_bits,dropped_overflow_bits";

std::string format_trace_row(TraceRow const& row);

//! Streams trace rows to a CSV file, header first.
class TraceWriter
{
  public:
    explicit TraceWriter(std::filesystem::path const& path);

    void write(TraceRow const& row);
    void close();

  private:
    std::filesystem::path path_;
    std::ofstream out_;
};

//! One completed run with the scenario it executed.
struct RunResult
{
    Scenario scenario;
    SimReport report;
};

//! summary.json text for a set of runs.
std::string summary_json(std::span<RunResult const> runs);

//! metrics.csv text: one row per (policy, seed, window).
std::string metrics_csv(std::span<RunResult const> runs);

/*!
 * Write summary.json and metrics.csv into out_dir (created if needed).
 *
 * Throws IoError naming the path on failure.
 */
void emit(std::span<RunResult const> runs, std::filesystem::path const& out_dir);

//! Write text to a file, IoError on failure.
void write_text_file(std::filesystem::path const& path, std::string_view text);

//---------------------------------------------------------------------------//
}  // namespace qsim
