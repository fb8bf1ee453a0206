// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file scenario.cpp
//---------------------------------------------------------------------------//
#include "qsim/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>

#include "qsim/error.hpp"

namespace qsim
{
Scenario validated(Scenario s)
{
    if (s.duration_tti < 1)
        throw ConfigError("duration_tti", "must be at least 1");
    if (s.tti_ms != 1)
        throw ConfigError("tti_ms", "only a 1 ms scheduling period is supported");
    if (s.window_tti < 0)
        throw ConfigError("window_tti", "must be non-negative");
    if (s.buffersize_bits <= 0)
        throw ConfigError("buffersize_bits", "must be positive");
    if (!(s.ema_window_tti >= 1.0) || !std::isfinite(s.ema_window_tti))
        throw ConfigError("ema_window_tti", "must be at least 1");
    if (s.flows.empty())
        throw ConfigError("flows", "at least one flow is required");

    std::set<UeId> ids;
    for (auto& f : s.flows)
    {
        if (!ids.insert(f.ue_id).second)
            throw ConfigError("ue_id",
                              "duplicate ue_id " + std::to_string(f.ue_id));
        validate(f);
        if (f.original_load_bps == 0.0)
            f.original_load_bps = f.offered_load_bps;
    }

    if (s.channel.initial_cqi.empty())
    {
        std::size_t const n = std::size(default_initial_cqi);
        for (std::size_t i = 0; i < s.flows.size(); ++i)
            s.channel.initial_cqi.push_back(default_initial_cqi[i % n]);
    }
    if (s.channel.initial_cqi.size() != s.flows.size())
        throw ConfigError("initial_cqi", "needs one entry per flow");
    validate(s.channel);

    if (s.qoe.feedback_delay_tti < 0)
        throw ConfigError("feedback_delay_tti", "must be non-negative");
    if (!(s.qoe.q_max >= 1.0) || !std::isfinite(s.qoe.q_max))
        throw ConfigError("q_max", "must be finite and at least 1");

    auto const& adj = s.adjustment;
    if (!(adj.occupancy_threshold > 0.0 && adj.occupancy_threshold < 1.0))
        throw ConfigError("occupancy_threshold", "must lie in (0, 1)");
    if (adj.starvation_tti < 1)
        throw ConfigError("starvation_tti", "must be at least 1");
    if (!(adj.factor > 0.0 && adj.factor <= 1.0))
        throw ConfigError("factor", "must lie in (0, 1]");

    if (s.annotations.users
        && *s.annotations.users != static_cast<std::int64_t>(s.flows.size()))
        throw ConfigError("users", "does not match the number of flows");
    if (s.annotations.bs_number && *s.annotations.bs_number != 1)
        throw ConfigError("bs_number", "only a single cell is simulated");
    return s;
}

double expected_servable_bps(Scenario const& s)
{
    if (s.channel.initial_cqi.empty() || s.duration_tti < 1)
        return 0.0;

    constexpr std::size_t levels = cqi_max;
    std::array<double, levels> rates{};
    for (std::size_t k = 0; k < levels; ++k)
        rates[k] = rate_of(static_cast<int>(k) + 1, s.channel);
    double const stay = 1.0 - s.channel.walk_prob;
    double const move = 0.5 * s.channel.walk_prob;

    double total = 0;
    for (int cqi : s.channel.initial_cqi)
    {
        std::array<double, levels> dist{};
        dist[static_cast<std::size_t>(cqi - 1)] = 1.0;
        double sum = 0;
        for (Tti t = 0; t < s.duration_tti; ++t)
        {
            // CQI is stepped before the first scheduling decision
            std::array<double, levels> next{};
            for (std::size_t k = 0; k < levels; ++k)
            {
                next[k] += stay * dist[k];
                next[std::min(k + 1, levels - 1)] += move * dist[k];
                next[k == 0 ? 0 : k - 1] += move * dist[k];
            }
            dist = next;
            for (std::size_t k = 0; k < levels; ++k)
                sum += dist[k] * rates[k];
        }
        total += sum / static_cast<double>(s.duration_tti);
    }
    return total / static_cast<double>(s.channel.initial_cqi.size());
}

double expected_offered_bps(Scenario const& s)
{
    double sum = 0;
    for (auto const& f : s.flows)
        sum += expected_arrival_bps(f);
    return sum;
}

//---------------------------------------------------------------------------//
}  // namespace qsim
