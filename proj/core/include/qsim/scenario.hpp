// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/scenario.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "scheduler.hpp"
#include "traffic.hpp"
#include "types.hpp"

namespace qsim
{
//! Buffer-pressure trigger for source-rate adaptation requests.
struct AdjustmentParams
{
    bool enabled{false};
    double occupancy_threshold{0.8};
    Tti starvation_tti{100};
    double factor{0.75};

    bool operator==(AdjustmentParams const&) const = default;
};

struct QoeParams
{
    std::int64_t feedback_delay_tti{0};
    double q_max{100.0};

    bool operator==(QoeParams const&) const = default;
};

//! Deployment values carried for documentation; only \c users is checked.
struct CellAnnotations
{
    std::optional<std::int64_t> users;
    std::optional<std::int64_t> bs_number;
    std::optional<double> cell_radius_km;
    std::optional<double> moving_speed_kmh;

    bool operator==(CellAnnotations const&) const = default;
};

struct Scenario
{
    std::string name;
    Tti duration_tti{30'000};
    std::int64_t tti_ms{1};
    std::uint64_t seed{1};
    Policy policy{Policy::bcqq};
    //! 0 reports a single window spanning the whole run
    Tti window_tti{0};
    Bits buffersize_bits{40'000'000};
    double ema_window_tti{1000.0};
    ChannelParams channel;
    QoeParams qoe;
    AdjustmentParams adjustment;
    CellAnnotations annotations;
    std::vector<FlowSpec> flows;

    bool operator==(Scenario const&) const = default;
};

//! CQIs assigned round-robin when a scenario lists none.
inline constexpr int default_initial_cqi[] = {13, 11, 9, 11, 13};

/*!
 * Check every invariant and fill derived defaults.
 *
 * Missing initial CQIs are filled from the staggered default pattern and
 * each flow's original load is pinned to its configured load. Throws
 * ConfigError naming the first offending key.
 */
Scenario validated(Scenario scenario);

/*!
 * Expected single-user rate, averaged over UEs and over the run.
 *
 * Each UE's CQI distribution starts at its initial CQI and is propagated
 * exactly through the clamped random walk for duration_tti steps; the
 * result is what an equal time share of the cell would carry on average.
 */
double expected_servable_bps(Scenario const& scenario);

//! Sum of the flows' long-run arrival rates.
double expected_offered_bps(Scenario const& scenario);

//---------------------------------------------------------------------------//
}  // namespace qsim
