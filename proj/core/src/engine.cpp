// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file engine.cpp
//---------------------------------------------------------------------------//
#include "qsim/engine.hpp"

#include <stdexcept>

namespace qsim
{
namespace
{
UeState make_ue(Scenario const& s, std::size_t i)
{
    FlowSpec const& flow = s.flows[i];
    int const cqi = s.channel.initial_cqi[i];
    return UeState{
        flow,
        UeBuffer{s.buffersize_bits},
        CqiState{cqi, RngStream{s.seed, flow.ue_id, StreamPurpose::channel}},
        RngStream{s.seed, flow.ue_id, StreamPurpose::traffic},
        QoeState{flow.ue_id, 0, 0, 1.0},
        QoeFeedback{s.qoe.feedback_delay_tti},
        rate_of(cqi, s.channel),
        -1,
        std::nullopt,
    };
}
}  // namespace

bool adjustment_triggered(AdjustmentParams const& params, double occupancy_ratio,
                          Tti tti, Tti last_served_tti,
                          std::optional<Tti> last_adjustment_tti)
{
    if (!params.enabled)
        return false;
    if (!(occupancy_ratio > params.occupancy_threshold))
        return false;
    if (tti - last_served_tti < params.starvation_tti)
        return false;
    return !last_adjustment_tti
           || tti - *last_adjustment_tti >= params.starvation_tti;
}

Simulation::Simulation(Scenario scenario, std::unique_ptr<QoeModel> qoe_model)
    : scenario_(validated(std::move(scenario)))
    , qoe_model_(std::move(qoe_model))
    , window_(scenario_.flows.size(), 0)
    , whole_run_(scenario_.flows.size(), 0)
{
    if (!qoe_model_)
        qoe_model_ = std::make_unique<UnmetDemandModel>(scenario_.qoe.q_max);
    ues_.reserve(scenario_.flows.size());
    for (std::size_t i = 0; i < scenario_.flows.size(); ++i)
        ues_.push_back(make_ue(scenario_, i));
}

StepRecord Simulation::step()
{
    if (this->done())
        throw std::logic_error("simulation already reached its duration");

    Tti const tti = now_;
    std::size_t const n = ues_.size();
    StepRecord record;
    record.tti = tti;

    std::vector<Bits> arrived(n, 0);
    std::vector<Bits> overflow(n, 0);
    std::vector<Bits> expired(n, 0);

    // 1. arrivals
    for (std::size_t i = 0; i < n; ++i)
    {
        auto& ue = ues_[i];
        for (auto const& pkt : arrivals(ue.flow, tti, ue.traffic_rng))
        {
            arrived[i] += pkt.size_bits;
            if (!ue.buffer.enqueue(pkt))
                overflow[i] += pkt.size_bits;
        }
    }
    // 2. deadline expiry
    for (std::size_t i = 0; i < n; ++i)
        expired[i] = ues_[i].buffer.expire(tti);
    // 3. channel
    for (auto& ue : ues_)
        ue.channel.step(scenario_.channel.walk_prob);
    // 4. QoE feedback
    for (std::size_t i = 0; i < n; ++i)
    {
        auto& ue = ues_[i];
        ue.qoe = update_requirement(ue.qoe, arrived[i]);
        ue.qoe.q = qoe_model_->q(ue.qoe.y_bits, ue.qoe.y_req_bits);
        ue.feedback.publish(ue.qoe.q);
    }
    // 5. priorities and selection
    std::vector<UeSchedRecord> inputs;
    inputs.reserve(n);
    for (auto const& ue : ues_)
    {
        auto const head = ue.buffer.head_arrival_tti();
        inputs.push_back(UeSchedRecord{
            ue.flow.ue_id,
            ue.buffer.occupied_bits(),
            ue.buffer.capacity_bits(),
            ue.flow.alpha,
            static_cast<double>(ue.flow.beta_ms) * tti_seconds,
            ue.feedback.observed(),
            rate_of(ue.channel.cqi(), scenario_.channel),
            head ? static_cast<double>(tti - *head) * tti_seconds : 0.0,
            ue.avg_rate_bps,
            ue.last_served_tti,
        });
    }
    std::vector<double> priorities(n);
    for (std::size_t i = 0; i < n; ++i)
        priorities[i] = priority(inputs[i], scenario_.policy);
    record.decision = select_by_priority(inputs, priorities);

    // 6. transmission
    std::vector<Bits> tx(n, 0);
    if (record.decision.selected_index)
    {
        std::size_t const w = *record.decision.selected_index;
        auto drained = ues_[w].buffer.drain(record.decision.budget_bits, tti);
        tx[w] = drained.tx_bits;
        record.tx_bits = drained.tx_bits;
        for (auto const& d : drained.delivered)
        {
            window_.add_packet_delay(w, d.delay_ms);
            whole_run_.add_packet_delay(w, d.delay_ms);
        }
        window_.add_scheduled(w);
        whole_run_.add_scheduled(w);
        ues_[w].last_served_tti = tti;
    }
    else
    {
        ++idle_ttis_;
    }

    // 7. averages and metrics
    for (std::size_t i = 0; i < n; ++i)
    {
        auto& ue = ues_[i];
        ue.avg_rate_bps = update_avg_rate(ue.avg_rate_bps, tx[i],
                                          scenario_.ema_window_tti);
        ue.qoe.y_bits += tx[i];
        for (auto* m : {&window_, &whole_run_})
        {
            m->add_required(i, arrived[i]);
            m->add_delivered(i, tx[i]);
            m->add_overflow_drop(i, overflow[i]);
            m->add_deadline_drop(i, expired[i]);
        }
    }

    // 8. buffer-pressure adjustment
    for (std::size_t i = 0; i < n; ++i)
    {
        if (auto ev = this->adjustment_check(i, tti))
        {
            record.adjustments.push_back(*ev);
            adjustments_.push_back(*ev);
        }
    }

    record.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        auto const& ue = ues_[i];
        record.rows.push_back(TraceRow{
            tti,
            ue.flow.ue_id,
            ue.channel.cqi(),
            inputs[i].rate_bps,
            ue.buffer.occupied_bits(),
            inputs[i].q,
            priorities[i],
            record.decision.selected_ue,
            tx[i],
            expired[i],
            overflow[i],
        });
    }

    ++now_;
    if (scenario_.window_tti > 0
        && now_ - window_.start_tti() >= scenario_.window_tti)
    {
        this->close_window(now_, &record);
    }
    return record;
}

std::optional<AdjustmentEvent> Simulation::adjustment_check(std::size_t i, Tti tti)
{
    auto& ue = ues_[i];
    double const occupancy = ue.buffer.occupancy_ratio();
    if (!adjustment_triggered(scenario_.adjustment, occupancy, tti,
                              ue.last_served_tti, ue.last_adjustment_tti))
    {
        return std::nullopt;
    }
    AdjustmentEvent ev;
    ev.tti = tti;
    ev.ue = ue.flow.ue_id;
    ev.occupancy_ratio = occupancy;
    ev.starved_tti = tti - ue.last_served_tti;
    ev.old_load_bps = ue.flow.offered_load_bps;
    ue.flow = apply_adjustment(ue.flow, scenario_.adjustment.factor);
    ev.new_load_bps = ue.flow.offered_load_bps;
    ue.last_adjustment_tti = tti;
    return ev;
}

void Simulation::close_window(Tti end_tti, StepRecord* record)
{
    WindowRecord rec = window_.close(end_tti);
    for (auto& ue : ues_)
    {
        ue.qoe.y_bits = 0;
        ue.qoe.y_req_bits = 0;
    }
    if (record)
        record->closed_window = rec;
    windows_.push_back(std::move(rec));
}

SimReport Simulation::finish()
{
    if (finished_)
        throw std::logic_error("finish() called twice");
    finished_ = true;
    if (now_ > window_.start_tti())
        this->close_window(now_, nullptr);

    SimReport report;
    report.policy = std::string(to_string(scenario_.policy));
    report.seed = scenario_.seed;
    report.duration_tti = now_;
    report.idle_ttis = idle_ttis_;
    report.windows = windows_;
    report.adjustments = adjustments_;

    WindowRecord const whole = whole_run_.summarize(now_);
    report.jfi = whole.jfi;
    report.qoe_fi = whole.qoe_fi;
    report.total_throughput_bps = whole.total_throughput_bps;
    report.total_delivered_bits = whole.total_bits;

    auto const totals = whole_run_.ues();
    for (std::size_t i = 0; i < ues_.size(); ++i)
    {
        auto const& ue = ues_[i];
        auto const& c = ue.buffer.counters();
        UeReport r;
        r.ue = ue.flow.ue_id;
        r.traffic_class = std::string(to_string(ue.flow.cls));
        r.throughput_bps = whole.throughput_bps[i];
        r.arrived_bits = c.arrived_bits;
        r.delivered_bits = c.delivered_bits;
        r.dropped_overflow_bits = c.dropped_overflow_bits;
        r.dropped_deadline_bits = c.dropped_deadline_bits;
        r.buffered_bits = ue.buffer.occupied_bits();
        r.loss_rate = c.arrived_bits > 0
                          ? static_cast<double>(c.dropped_overflow_bits
                                                + c.dropped_deadline_bits)
                                / static_cast<double>(c.arrived_bits)
                          : 0.0;
        r.mean_delay_ms = totals[i].delays.mean();
        r.p99_delay_ms = totals[i].delays.percentile(99.0);
        r.packets_delivered = totals[i].delays.count();
        r.sched_count = totals[i].sched_count;
        r.final_offered_load_bps = ue.flow.offered_load_bps;
        report.ues.push_back(std::move(r));
    }
    return report;
}

SimReport run(Scenario const& scenario, TraceSink const& trace)
{
    Simulation sim{scenario};
    while (!sim.done())
    {
        auto rec = sim.step();
        if (trace)
        {
            for (auto const& row : rec.rows)
                trace(row);
        }
    }
    return sim.finish();
}

//---------------------------------------------------------------------------//
}  // namespace qsim
