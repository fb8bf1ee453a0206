// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file report_io.cpp
//---------------------------------------------------------------------------//
#include "qsim/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qsim/error.hpp"

namespace qsim
{
namespace
{
using nlohmann::json;

//---------------------------------------------------------------------------//
// Strict reader for one JSON object: every key must be known.
class ObjectReader
{
  public:
    ObjectReader(json const& obj, std::string const& where,
                 std::initializer_list<char const*> allowed)
        : obj_(obj)
    {
        if (!obj.is_object())
            throw ConfigError(where, "expected a JSON object");
        for (auto const& [key, value] : obj.items())
        {
            bool known = false;
            for (char const* a : allowed)
                known = known || key == a;
            if (!known)
                throw ConfigError(key, "unknown key in '" + where + "'");
        }
    }

    bool has(char const* key) const { return obj_.contains(key); }
    json const& at(char const* key) const
    {
        if (!obj_.contains(key))
            throw ConfigError(key, "required key is missing");
        return obj_.at(key);
    }

    double real(char const* key) const
    {
        auto const& v = this->at(key);
        if (!v.is_number())
            throw ConfigError(key, "expected a number");
        return v.get<double>();
    }
    double real(char const* key, double fallback) const
    {
        return this->has(key) ? this->real(key) : fallback;
    }

    std::int64_t integer(char const* key) const
    {
        auto const& v = this->at(key);
        if (v.is_number_integer())
            return v.get<std::int64_t>();
        if (v.is_number_float())
        {
            double const d = v.get<double>();
            if (std::isfinite(d) && d == std::floor(d)
                && std::abs(d) < 9.0e18)
                return static_cast<std::int64_t>(d);
        }
        throw ConfigError(key, "expected an integer");
    }
    std::int64_t integer(char const* key, std::int64_t fallback) const
    {
        return this->has(key) ? this->integer(key) : fallback;
    }

    std::uint64_t unsigned_integer(char const* key, std::uint64_t fallback) const
    {
        if (!this->has(key))
            return fallback;
        auto const& v = this->at(key);
        if (v.is_number_unsigned())
            return v.get<std::uint64_t>();
        auto const i = this->integer(key);
        if (i < 0)
            throw ConfigError(key, "must be non-negative");
        return static_cast<std::uint64_t>(i);
    }

    bool boolean(char const* key, bool fallback) const
    {
        if (!this->has(key))
            return fallback;
        auto const& v = this->at(key);
        if (!v.is_boolean())
            throw ConfigError(key, "expected true or false");
        return v.get<bool>();
    }

    std::string string(char const* key) const
    {
        auto const& v = this->at(key);
        if (!v.is_string())
            throw ConfigError(key, "expected a string");
        return v.get<std::string>();
    }

  private:
    json const& obj_;
};

FlowSpec parse_flow(json const& j)
{
    ObjectReader r(j, "flows",
                   {"ue_id", "class", "alpha", "beta_ms", "mean_packet_bits",
                    "max_packet_bits", "frame_interval_ms", "offered_load_bps",
                    "adaptive"});
    FlowSpec f;
    auto const ue = r.integer("ue_id");
    if (ue < 0 || ue > std::numeric_limits<UeId>::max())
        throw ConfigError("ue_id", "out of range");
    f.ue_id = static_cast<UeId>(ue);
    f.cls = traffic_class_from_string(r.string("class"));
    f.alpha = r.real("alpha");
    f.beta_ms = r.integer("beta_ms");
    f.mean_packet_bits = r.integer("mean_packet_bits", f.mean_packet_bits);
    f.max_packet_bits = r.integer("max_packet_bits", f.max_packet_bits);
    f.frame_interval_ms = r.integer("frame_interval_ms", f.frame_interval_ms);
    f.offered_load_bps = r.real("offered_load_bps");
    f.adaptive = r.boolean("adaptive", false);
    return f;
}

Scenario parse_scenario_json(json const& j)
{
    ObjectReader r(j, "scenario",
                   {"name", "duration_tti", "tti_ms", "seed", "policy",
                    "window_tti", "buffersize_bits", "ema_window_tti",
                    "channel", "qoe", "adjustment", "annotations", "flows"});
    Scenario s;
    if (r.has("name"))
        s.name = r.string("name");
    s.duration_tti = r.integer("duration_tti", s.duration_tti);
    s.tti_ms = r.integer("tti_ms", s.tti_ms);
    s.seed = r.unsigned_integer("seed", s.seed);
    if (r.has("policy"))
        s.policy = policy_from_string(r.string("policy"));
    s.window_tti = r.integer("window_tti", s.window_tti);
    s.buffersize_bits = r.integer("buffersize_bits", s.buffersize_bits);
    s.ema_window_tti = r.real("ema_window_tti", s.ema_window_tti);

    if (r.has("channel"))
    {
        ObjectReader c(r.at("channel"), "channel",
                       {"peak_rate_bps", "walk_prob", "initial_cqi"});
        s.channel.peak_rate_bps = c.real("peak_rate_bps", s.channel.peak_rate_bps);
        s.channel.walk_prob = c.real("walk_prob", s.channel.walk_prob);
        if (c.has("initial_cqi"))
        {
            auto const& list = c.at("initial_cqi");
            if (!list.is_array())
                throw ConfigError("initial_cqi", "expected an array");
            for (auto const& v : list)
            {
                if (!v.is_number_integer())
                    throw ConfigError("initial_cqi", "expected integers");
                s.channel.initial_cqi.push_back(v.get<int>());
            }
        }
    }
    if (r.has("qoe"))
    {
        ObjectReader q(r.at("qoe"), "qoe", {"feedback_delay_tti", "q_max"});
        s.qoe.feedback_delay_tti
            = q.integer("feedback_delay_tti", s.qoe.feedback_delay_tti);
        s.qoe.q_max = q.real("q_max", s.qoe.q_max);
    }
    if (r.has("adjustment"))
    {
        ObjectReader a(r.at("adjustment"), "adjustment",
                       {"enabled", "occupancy_threshold", "starvation_tti",
                        "factor"});
        auto& adj = s.adjustment;
        adj.enabled = a.boolean("enabled", adj.enabled);
        adj.occupancy_threshold
            = a.real("occupancy_threshold", adj.occupancy_threshold);
        adj.starvation_tti = a.integer("starvation_tti", adj.starvation_tti);
        adj.factor = a.real("factor", adj.factor);
    }
    if (r.has("annotations"))
    {
        ObjectReader a(r.at("annotations"), "annotations",
                       {"users", "bs_number", "cell_radius_km",
                        "moving_speed_kmh"});
        auto& ann = s.annotations;
        if (a.has("users"))
            ann.users = a.integer("users");
        if (a.has("bs_number"))
            ann.bs_number = a.integer("bs_number");
        if (a.has("cell_radius_km"))
            ann.cell_radius_km = a.real("cell_radius_km");
        if (a.has("moving_speed_kmh"))
            ann.moving_speed_kmh = a.real("moving_speed_kmh");
    }

    auto const& flows = r.at("flows");
    if (!flows.is_array())
        throw ConfigError("flows", "expected an array");
    for (auto const& f : flows)
        s.flows.push_back(parse_flow(f));

    return validated(std::move(s));
}

json scenario_as_json(Scenario const& s)
{
    json j;
    j["name"] = s.name;
    j["duration_tti"] = s.duration_tti;
    j["tti_ms"] = s.tti_ms;
    j["seed"] = s.seed;
    j["policy"] = std::string(to_string(s.policy));
    j["window_tti"] = s.window_tti;
    j["buffersize_bits"] = s.buffersize_bits;
    j["ema_window_tti"] = s.ema_window_tti;
    j["channel"] = {{"peak_rate_bps", s.channel.peak_rate_bps},
                    {"walk_prob", s.channel.walk_prob},
                    {"initial_cqi", s.channel.initial_cqi}};
    j["qoe"] = {{"feedback_delay_tti", s.qoe.feedback_delay_tti},
                {"q_max", s.qoe.q_max}};
    j["adjustment"] = {{"enabled", s.adjustment.enabled},
                       {"occupancy_threshold", s.adjustment.occupancy_threshold},
                       {"starvation_tti", s.adjustment.starvation_tti},
                       {"factor", s.adjustment.factor}};
    json ann = json::object();
    if (s.annotations.users)
        ann["users"] = *s.annotations.users;
    if (s.annotations.bs_number)
        ann["bs_number"] = *s.annotations.bs_number;
    if (s.annotations.cell_radius_km)
        ann["cell_radius_km"] = *s.annotations.cell_radius_km;
    if (s.annotations.moving_speed_kmh)
        ann["moving_speed_kmh"] = *s.annotations.moving_speed_kmh;
    j["annotations"] = ann;
    json flows = json::array();
    for (auto const& f : s.flows)
    {
        json jf;
        jf["ue_id"] = f.ue_id;
        jf["class"] = std::string(to_string(f.cls));
        jf["alpha"] = f.alpha;
        jf["beta_ms"] = f.beta_ms;
        jf["mean_packet_bits"] = f.mean_packet_bits;
        jf["max_packet_bits"] = f.max_packet_bits;
        jf["frame_interval_ms"] = f.frame_interval_ms;
        jf["offered_load_bps"] = f.offered_load_bps;
        jf["adaptive"] = f.adaptive;
        flows.push_back(std::move(jf));
    }
    j["flows"] = std::move(flows);
    return j;
}

// Reals in output documents carry 9 significant digits.
json real_json(double v)
{
    return round_to_written(v);
}

json optional_real(std::optional<double> v)
{
    return v ? real_json(*v) : json(nullptr);
}

template<class T>
json optional_int(std::optional<T> v)
{
    return v ? json(*v) : json(nullptr);
}

json report_as_json(RunResult const& run)
{
    auto const& r = run.report;
    json j;
    j["policy"] = r.policy;
    j["seed"] = r.seed;
    j["scenario_fingerprint"] = scenario_fingerprint(run.scenario);
    j["duration_tti"] = r.duration_tti;
    j["total_throughput_bps"] = real_json(r.total_throughput_bps);
    j["total_delivered_bits"] = r.total_delivered_bits;
    j["idle_ttis"] = r.idle_ttis;
    j["jfi"] = optional_real(r.jfi);
    j["qoe_fi"] = optional_real(r.qoe_fi);

    json ues = json::array();
    for (auto const& u : r.ues)
    {
        json ju;
        ju["ue"] = u.ue;
        ju["class"] = u.traffic_class;
        ju["throughput_bps"] = real_json(u.throughput_bps);
        ju["arrived_bits"] = u.arrived_bits;
        ju["delivered_bits"] = u.delivered_bits;
        ju["dropped_overflow_bits"] = u.dropped_overflow_bits;
        ju["dropped_deadline_bits"] = u.dropped_deadline_bits;
        ju["buffered_bits"] = u.buffered_bits;
        ju["loss_rate"] = real_json(u.loss_rate);
        ju["mean_delay_ms"] = optional_real(u.mean_delay_ms);
        ju["p99_delay_ms"] = optional_int(u.p99_delay_ms);
        ju["packets_delivered"] = u.packets_delivered;
        ju["sched_count"] = u.sched_count;
        ju["final_offered_load_bps"] = real_json(u.final_offered_load_bps);
        ues.push_back(std::move(ju));
    }
    j["ues"] = std::move(ues);

    json adj = json::array();
    for (auto const& e : r.adjustments)
    {
        adj.push_back({{"tti", e.tti},
                       {"ue", e.ue},
                       {"occupancy_ratio", real_json(e.occupancy_ratio)},
                       {"starved_tti", e.starved_tti},
                       {"old_load_bps", real_json(e.old_load_bps)},
                       {"new_load_bps", real_json(e.new_load_bps)}});
    }
    j["adjustments"] = std::move(adj);
    return j;
}

std::string optional_cell(std::optional<double> v)
{
    return v ? format_real(*v) : std::string{};
}

// FNV-1a, 64 bit
std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace

//---------------------------------------------------------------------------//
Scenario parse_scenario(std::string_view text)
{
    json j;
    try
    {
        j = json::parse(text.begin(), text.end());
    }
    catch (json::parse_error const& e)
    {
        throw SyntaxError(std::string("scenario is not valid JSON: ") + e.what());
    }
    try
    {
        return parse_scenario_json(j);
    }
    catch (json::exception const& e)
    {
        throw ConfigError("scenario", e.what());
    }
}

Scenario load_scenario(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read scenario file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_json(Scenario const& scenario)
{
    return scenario_as_json(scenario).dump(2) + "\n";
}

std::string scenario_fingerprint(Scenario const& scenario)
{
    json j = scenario_as_json(scenario);
    j.erase("policy");
    j.erase("seed");
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(j.dump())));
    return buf;
}

std::string format_real(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

double round_to_written(double value)
{
    return std::strtod(format_real(value).c_str(), nullptr);
}

std::string format_trace_row(TraceRow const& row)
{
    std::string s;
    s.reserve(96);
    s += std::to_string(row.tti);
    s += ',';
    s += std::to_string(row.ue);
    s += ',';
    s += std::to_string(row.cqi);
    s += ',';
    s += format_real(row.rate_bps);
    s += ',';
    s += std::to_string(row.buffer_bits);
    s += ',';
    s += format_real(row.q);
    s += ',';
    s += format_real(row.priority);
    s += ',';
    if (row.selected)
        s += std::to_string(*row.selected);
    s += ',';
    s += std::to_string(row.tx_bits);
    s += ',';
    s += std::to_string(row.dropped_deadline_bits);
    s += ',';
    s += std::to_string(row.dropped_overflow_bits);
    return s;
}

TraceWriter::TraceWriter(std::filesystem::path const& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc)
{
    if (!out_)
        throw IoError("cannot write trace file '" + path.string() + "'");
    out_ << trace_header << '\n';
}

void TraceWriter::write(TraceRow const& row)
{
    out_ << format_trace_row(row) << '\n';
}

void TraceWriter::close()
{
    out_.close();
    if (!out_)
        throw IoError("failed writing trace file '" + path_.string() + "'");
}

std::string summary_json(std::span<RunResult const> runs)
{
    json doc;
    doc["scenario"] = runs.empty() ? json(nullptr)
                                   : scenario_as_json(runs.front().scenario);
    json list = json::array();
    for (auto const& run : runs)
        list.push_back(report_as_json(run));
    doc["runs"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string metrics_csv(std::span<RunResult const> runs)
{
    std::ostringstream out;
    out << "policy,seed,window,start_tti,end_tti,total_bits,"
           "total_throughput_bps,jfi,qoe_fi";
    if (!runs.empty())
    {
        for (auto const& f : runs.front().scenario.flows)
            out << ",y_bits_ue" << f.ue_id << ",y_req_bits_ue" << f.ue_id;
    }
    out << '\n';
    for (auto const& run : runs)
    {
        auto const& r = run.report;
        for (auto const& w : r.windows)
        {
            out << r.policy << ',' << r.seed << ',' << w.index << ','
                << w.start_tti << ',' << w.end_tti << ',' << w.total_bits
                << ',' << format_real(w.total_throughput_bps) << ','
                << optional_cell(w.jfi) << ',' << optional_cell(w.qoe_fi);
            for (std::size_t i = 0; i < w.y_bits.size(); ++i)
                out << ',' << w.y_bits[i] << ',' << w.y_req_bits[i];
            out << '\n';
        }
    }
    return out.str();
}

void write_text_file(std::filesystem::path const& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out)
        throw IoError("failed writing '" + path.string() + "'");
}

void emit(std::span<RunResult const> runs, std::filesystem::path const& out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + out_dir.string()
                      + "': " + ec.message());
    write_text_file(out_dir / "summary.json", summary_json(runs));
    write_text_file(out_dir / "metrics.csv", metrics_csv(runs));
}

//---------------------------------------------------------------------------//
}  // namespace qsim
