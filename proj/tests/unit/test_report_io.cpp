// SPDX-License-Identifier: Apache-2.0
#include "qsim/report_io.hpp"

#include <doctest.h>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "qsim/engine.hpp"
#include "qsim/error.hpp"
#include "test_util.hpp"

using namespace qsim;
namespace fs = std::filesystem;
using qsim::test::read_file;
using qsim::test::scratch_dir;
using qsim::test::small_scenario;

namespace
{
std::string table1_text()
{
    return read_file(fs::path(QSIM_SCENARIO_DIR) / "table1.json");
}

std::string key_of(std::string const& text)
{
    try
    {
        parse_scenario(text);
    }
    catch (ConfigError const& e)
    {
        return e.key();
    }
    return {};
}

std::vector<std::string> split(std::string const& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}
}  // namespace

TEST_CASE("table scenario loads with its five flows")
{
    auto const s = load_scenario(fs::path(QSIM_SCENARIO_DIR) / "table1.json");
    REQUIRE(s.flows.size() == 5);
    for (int i = 0; i < 3; ++i)
    {
        CHECK(s.flows[i].cls == TrafficClass::ftp_download);
        CHECK(s.flows[i].alpha == 1e-6);
        CHECK(s.flows[i].beta_ms == 300);
        CHECK(s.flows[i].mean_packet_bits == 500'000);
    }
    for (int i = 3; i < 5; ++i)
    {
        CHECK(s.flows[i].cls == TrafficClass::live_hd_video);
        CHECK(s.flows[i].beta_ms == 150);
        CHECK(s.flows[i].max_packet_bits == 2'000'000);
    }
    CHECK(s.buffersize_bits == 40'000'000);
    CHECK(s.channel.peak_rate_bps == 6e9);
    CHECK(s.channel.initial_cqi == std::vector<int>{13, 11, 9, 11, 13});
    CHECK(s.annotations.users == 5);
}

TEST_CASE("semantic errors name the offending key")
{
    auto base = nlohmann::json::parse(table1_text());

    auto j = base;
    j["flows"][0]["alpha"] = 1.5;
    CHECK(key_of(j.dump()) == "alpha");

    j = base;
    j["flows"][1]["ue_id"] = 1;
    CHECK(key_of(j.dump()) == "ue_id");

    j = base;
    j["flows"][2]["mystery"] = 3;
    CHECK(key_of(j.dump()) == "mystery");

    j = base;
    j["duration_tti"] = 0;
    CHECK(key_of(j.dump()) == "duration_tti");

    j = base;
    j["policy"] = "EDF";
    CHECK(key_of(j.dump()) == "policy");

    j = base;
    j["annotations"]["users"] = 4;
    CHECK(key_of(j.dump()) == "users");

    j = base;
    j["flows"][0]["beta_ms"] = "fast";
    CHECK(key_of(j.dump()) == "beta_ms");
}

TEST_CASE("syntax errors are distinct from semantic errors")
{
    CHECK_THROWS_AS(parse_scenario("{\"flows\": [}"), SyntaxError);
    CHECK_THROWS_AS(parse_scenario("{\"flows\": []}"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/qsim.json"), IoError);
}

TEST_CASE("canonical JSON round-trips")
{
    auto const s = parse_scenario(table1_text());
    auto const text = scenario_to_json(s);
    auto const again = parse_scenario(text);
    CHECK(again == s);
    CHECK(scenario_to_json(again) == text);
}

TEST_CASE("fingerprint ignores policy and seed only")
{
    auto s = parse_scenario(table1_text());
    auto const fp = scenario_fingerprint(s);
    s.policy = Policy::rr;
    s.seed = 99;
    CHECK(scenario_fingerprint(s) == fp);
    s.flows[0].beta_ms = 301;
    CHECK(scenario_fingerprint(s) != fp);
}

TEST_CASE("real formatting")
{
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(2302585092.994) == "2.30258509e+09");
    CHECK(round_to_written(1.0 / 3.0) == 0.333333333);
    CHECK(format_real(round_to_written(1.0 / 3.0)) == format_real(1.0 / 3.0));
}

TEST_CASE("trace rows")
{
    TraceRow row;
    row.tti = 7;
    row.ue = 2;
    row.cqi = 9;
    row.rate_bps = 2.5e9;
    row.buffer_bits = 0;
    row.q = 1.0;
    row.priority = 0;
    CHECK(format_trace_row(row) == "7,2,9,2.5e+09,0,1,0,,0,0,0");
    row.selected = 2;
    row.tx_bits = 1000;
    CHECK(format_trace_row(row) == "7,2,9,2.5e+09,0,1,0,2,1000,0,0");
    CHECK(split(format_trace_row(row)).size() == split(std::string(trace_header)).size());
}

TEST_CASE("emitted files parse back and are stable")
{
    std::vector<RunResult> runs;
    for (auto p : {Policy::bcqq, Policy::mlwdf})
    {
        auto s = small_scenario(1500, p, 4);
        s.window_tti = 500;
        runs.push_back({s, run(s)});
    }
    auto const dir = scratch_dir("emit");
    emit(runs, dir);
    std::size_t files = 0;
    for ([[maybe_unused]] auto const& e : fs::directory_iterator(dir))
        ++files;
    CHECK(files == 2);

    auto const summary = read_file(dir / "summary.json");
    auto const metrics = read_file(dir / "metrics.csv");
    emit(runs, dir);
    CHECK(read_file(dir / "summary.json") == summary);
    CHECK(read_file(dir / "metrics.csv") == metrics);

    auto const j = nlohmann::json::parse(summary);
    REQUIRE(j["runs"].size() == 2);
    CHECK(j["runs"][0]["policy"] == "BCQQ");
    CHECK(j["runs"][1]["policy"] == "MLWDF");
    CHECK(j["runs"][0]["total_delivered_bits"].get<Bits>()
          == runs[0].report.total_delivered_bits);
    CHECK(j["runs"][0]["total_throughput_bps"].get<double>()
          == round_to_written(runs[0].report.total_throughput_bps));
    CHECK(parse_scenario(j["scenario"].dump()) == runs[0].scenario);

    std::stringstream ss(metrics);
    std::string line;
    std::getline(ss, line);
    auto const header = split(line);
    CHECK(header.size() == 9 + 2 * 5);
    CHECK(header[0] == "policy");
    CHECK(header[9] == "y_bits_ue1");
    int rows = 0;
    while (std::getline(ss, line))
    {
        auto const cells = split(line);
        REQUIRE(cells.size() == header.size());
        auto const& rr = runs[rows / 3].report;
        auto const& w = rr.windows[rows % 3];
        CHECK(cells[0] == rr.policy);
        CHECK(std::stoll(cells[5]) == w.total_bits);
        CHECK(std::stod(cells[6]) == round_to_written(w.total_throughput_bps));
        REQUIRE(w.jfi);
        CHECK(std::stod(cells[7]) == round_to_written(*w.jfi));
        CHECK(std::stoll(cells[9]) == w.y_bits[0]);
        CHECK(std::stoll(cells[10]) == w.y_req_bits[0]);
        ++rows;
    }
    CHECK(rows == 6);
    fs::remove_all(dir);
}

TEST_CASE("unwritable output directory")
{
    auto const dir = scratch_dir("blocked");
    write_text_file(dir / "file", "x");
    std::vector<RunResult> runs;
    auto s = small_scenario(10, Policy::pf, 1);
    runs.push_back({s, run(s)});
    CHECK_THROWS_AS(emit(runs, dir / "file" / "sub"), IoError);
    fs::remove_all(dir);
}
