// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file scheduler.cpp
//---------------------------------------------------------------------------//
#include "qsim/scheduler.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "qsim/error.hpp"

namespace qsim
{
std::string_view to_string(Policy p)
{
    switch (p)
    {
        case Policy::bcqq:
            return "BCQQ";
        case Policy::mlwdf:
            return "MLWDF";
        case Policy::pf:
            return "PF";
        case Policy::rr:
            return "RR";
    }
    return "?";
}

Policy policy_from_string(std::string_view s)
{
    std::string upper(s);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) {
        return static_cast<char>(std::toupper(c));
    });
    for (auto p : {Policy::bcqq, Policy::mlwdf, Policy::pf, Policy::rr})
    {
        if (upper == to_string(p))
            return p;
    }
    throw ConfigError("policy", "unknown scheduler '" + std::string(s) + "'");
}

double qos_weight(double alpha, double beta_s)
{
    return -std::log(alpha) / beta_s;
}

double bcqq_priority(UeSchedRecord const& u)
{
    if (u.buffer_bits <= 0)
        return 0.0;
    double const occupancy = static_cast<double>(u.buffer_bits)
                             / static_cast<double>(u.buffersize_bits);
    return occupancy * qos_weight(u.alpha, u.beta_s) * u.q * u.rate_bps;
}

double mlwdf_priority(UeSchedRecord const& u)
{
    if (u.buffer_bits <= 0)
        return 0.0;
    return qos_weight(u.alpha, u.beta_s) * u.hol_delay_s * u.rate_bps
           / u.avg_rate_bps;
}

double pf_priority(UeSchedRecord const& u)
{
    if (u.buffer_bits <= 0)
        return 0.0;
    return u.rate_bps / u.avg_rate_bps;
}

double priority(UeSchedRecord const& u, Policy policy)
{
    switch (policy)
    {
        case Policy::bcqq:
            return bcqq_priority(u);
        case Policy::mlwdf:
            return mlwdf_priority(u);
        case Policy::pf:
            return pf_priority(u);
        case Policy::rr:
            return u.buffer_bits > 0 ? 1.0 : 0.0;
    }
    return 0.0;
}

SchedDecision select_by_priority(std::span<UeSchedRecord const> inputs,
                                 std::span<double const> priorities)
{
    SchedDecision decision;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < inputs.size(); ++i)
    {
        auto const& cand = inputs[i];
        if (cand.buffer_bits <= 0)
            continue;
        if (!best)
        {
            best = i;
            continue;
        }
        auto const& cur = inputs[*best];
        double const pc = priorities[i];
        double const pb = priorities[*best];
        bool better = false;
        if (pc != pb)
            better = pc > pb;
        else if (cand.last_served_tti != cur.last_served_tti)
            better = cand.last_served_tti < cur.last_served_tti;
        else
            better = cand.ue < cur.ue;
        if (better)
            best = i;
    }
    if (best)
    {
        auto const& win = inputs[*best];
        decision.selected_ue = win.ue;
        decision.selected_index = best;
        decision.priority = priorities[*best];
        decision.budget_bits = slot_budget_bits(win.rate_bps);
    }
    return decision;
}

SchedDecision select(std::span<UeSchedRecord const> inputs, Policy policy)
{
    std::vector<double> priorities(inputs.size());
    std::transform(inputs.begin(), inputs.end(), priorities.begin(),
                   [policy](UeSchedRecord const& u) { return priority(u, policy); });
    return select_by_priority(inputs, priorities);
}

Bits slot_budget_bits(double rate_bps)
{
    return static_cast<Bits>(std::floor(rate_bps / ttis_per_second));
}

double update_avg_rate(double avg_rate_bps, Bits served_bits, double window_tti)
{
    double const inst = static_cast<double>(served_bits) * ttis_per_second;
    double const w = 1.0 / window_tti;
    return std::max((1.0 - w) * avg_rate_bps + w * inst, min_avg_rate_bps);
}

//---------------------------------------------------------------------------//
}  // namespace qsim
