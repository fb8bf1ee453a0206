// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/engine.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "buffer.hpp"
#include "channel.hpp"
#include "metrics.hpp"
#include "qoe.hpp"
#include "scenario.hpp"
#include "scheduler.hpp"
#include "traffic.hpp"

namespace qsim
{
//---------------------------------------------------------------------------//
/*!
 * Everything the simulator tracks for one UE.
 */
struct UeState
{
    FlowSpec flow;
    UeBuffer buffer;
    CqiState channel;
    RngStream traffic_rng;
    QoeState qoe;
    QoeFeedback feedback;
    double avg_rate_bps{min_avg_rate_bps};
    Tti last_served_tti{-1};
    std::optional<Tti> last_adjustment_tti;
};

//! One line of the per-TTI trace (one per UE per TTI).
struct TraceRow
{
    Tti tti{0};
    UeId ue{0};
    int cqi{0};
    double rate_bps{0};
    Bits buffer_bits{0};
    double q{1.0};
    double priority{0};
    std::optional<UeId> selected;
    Bits tx_bits{0};
    Bits dropped_deadline_bits{0};
    Bits dropped_overflow_bits{0};
};

struct StepRecord
{
    Tti tti{0};
    SchedDecision decision;
    Bits tx_bits{0};
    std::vector<TraceRow> rows;
    std::vector<AdjustmentEvent> adjustments;
    //! Present when this TTI closed a metrics window
    std::optional<WindowRecord> closed_window;
};

using TraceSink = std::function<void(TraceRow const&)>;

//---------------------------------------------------------------------------//
/*!
 * Deterministic single-cell downlink simulation.
 *
 * Each TTI runs, in this order: arrivals and enqueue, deadline expiry, CQI
 * update, QoE requirement and multiplier update, priority computation and
 * selection, transmission to the winner, rate-average and metric updates,
 * and finally the buffer-pressure adjustment check. The trace is a pure
 * function of the scenario (including its seed).
 */
class Simulation
{
  public:
    explicit Simulation(Scenario scenario,
                        std::unique_ptr<QoeModel> qoe_model = nullptr);

    //! Advance one TTI; requires !done().
    StepRecord step();

    bool done() const { return now_ >= scenario_.duration_tti; }
    Tti now() const { return now_; }

    //! Close the last window and assemble the run report.
    SimReport finish();

    Scenario const& scenario() const { return scenario_; }
    std::vector<UeState> const& ues() const { return ues_; }
    std::vector<WindowRecord> const& windows() const { return windows_; }

  private:
    void close_window(Tti end_tti, StepRecord* record);
    std::optional<AdjustmentEvent> adjustment_check(std::size_t i, Tti tti);

    Scenario scenario_;
    std::unique_ptr<QoeModel> qoe_model_;
    std::vector<UeState> ues_;
    MetricsWindow window_;
    MetricsWindow whole_run_;
    std::vector<WindowRecord> windows_;
    std::vector<AdjustmentEvent> adjustments_;
    std::int64_t idle_ttis_{0};
    Tti now_{0};
    bool finished_{false};
};

/*!
 * Pure trigger rule of the adjustment hook.
 *
 * Fires when the occupancy ratio exceeds the threshold, the UE has gone
 * unserved for at least starvation_tti TTIs, and no event was emitted for
 * it within the last starvation_tti TTIs.
 */
bool adjustment_triggered(AdjustmentParams const& params, double occupancy_ratio,
                          Tti tti, Tti last_served_tti,
                          std::optional<Tti> last_adjustment_tti);

//! Run a scenario to completion, optionally streaming trace rows.
SimReport run(Scenario const& scenario, TraceSink const& trace = {});

//---------------------------------------------------------------------------//
}  // namespace qsim
