// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/scheduler.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "types.hpp"

namespace qsim
{
enum class Policy
{
    bcqq,
    mlwdf,
    pf,
    rr,
};

std::string_view to_string(Policy p);
//! Accepts BCQQ, MLWDF, PF, RR (case-insensitive); throws ConfigError.
Policy policy_from_string(std::string_view s);

//---------------------------------------------------------------------------//
/*!
 * Everything the scheduler knows about one UE in the current TTI.
 *
 * \c ue is the scenario's UE id; records are passed in scenario order and
 * ties are resolved on (last_served_tti, ue).
 */
struct UeSchedRecord
{
    UeId ue{0};
    Bits buffer_bits{0};
    Bits buffersize_bits{1};
    double alpha{1e-6};
    double beta_s{0.3};
    double q{1.0};
    double rate_bps{0.0};
    double hol_delay_s{0.0};
    double avg_rate_bps{1.0};
    //! -1 when never served
    Tti last_served_tti{-1};
};

struct SchedDecision
{
    std::optional<UeId> selected_ue;
    //! Index of the selected record in the input span
    std::optional<std::size_t> selected_index;
    double priority{0.0};
    Bits budget_bits{0};
};

//! QoS weight shared by BCQQ and M-LWDF: -ln(alpha) / beta.
double qos_weight(double alpha, double beta_s);

//! (buffer / buffersize) * (-ln alpha / beta) * q * rate; 0 if empty.
double bcqq_priority(UeSchedRecord const& u);

//! (-ln alpha / beta) * hol_delay * rate / avg_rate; 0 if empty.
double mlwdf_priority(UeSchedRecord const& u);

//! rate / avg_rate; 0 if empty.
double pf_priority(UeSchedRecord const& u);

//! Priority under the given policy (round-robin: 1 for any backlogged UE).
double priority(UeSchedRecord const& u, Policy policy);

/*!
 * Pick the single UE to serve this TTI.
 *
 * Only backlogged UEs are candidates. Highest priority wins; ties go to the
 * least recently served UE, then to the lowest UE id. Round-robin is the
 * same rule with all priorities equal. No backlogged UE yields an idle
 * decision.
 */
SchedDecision select(std::span<UeSchedRecord const> inputs, Policy policy);

//! Same selection rule applied to precomputed priorities.
SchedDecision select_by_priority(std::span<UeSchedRecord const> inputs,
                                 std::span<double const> priorities);

//! Bits a UE can send in one TTI at the given rate.
Bits slot_budget_bits(double rate_bps);

inline constexpr double default_ema_window_tti = 1000.0;
inline constexpr double min_avg_rate_bps = 1.0;

//! Exponential moving average of the served rate, floored at 1 bps.
double update_avg_rate(double avg_rate_bps, Bits served_bits,
                       double window_tti = default_ema_window_tti);

//---------------------------------------------------------------------------//
}  // namespace qsim
