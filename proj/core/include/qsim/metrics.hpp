// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/metrics.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "types.hpp"

namespace qsim
{
//---------------------------------------------------------------------------//
// FAIRNESS INDICES
//---------------------------------------------------------------------------//

//! Jain's index (sum x)^2 / (n sum x^2); rejects empty or all-zero input.
double jfi(std::span<double const> xs);

//! Delivered and required volume of one user over a window.
struct SatisfactionPair
{
    double y{0};
    double y_req{0};
};

/*!
 * QoE-oriented fairness index.
 *
 * Sum over ordered pairs i != j of |y_i/Y_i - y_j/Y_j|, unnormalized, so
 * every unordered pair contributes twice. Requires n >= 2 and Y_i > 0.
 * Smaller is fairer; 0 iff all satisfaction ratios are equal.
 */
double qoe_fi(std::span<SatisfactionPair const> pairs);

//---------------------------------------------------------------------------//
// DELAY STATISTICS
//---------------------------------------------------------------------------//

//! Histogram of packet delivery delays in whole milliseconds.
class DelayHistogram
{
  public:
    void add(std::int64_t delay_ms);
    void reset() { counts_.clear(); total_ = 0; sum_ = 0; }

    std::uint64_t count() const { return total_; }
    std::optional<double> mean() const;
    //! Nearest-rank percentile, p in (0, 100].
    std::optional<std::int64_t> percentile(double p) const;

  private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_{0};
    std::int64_t sum_{0};
};

//---------------------------------------------------------------------------//
// WINDOWS
//---------------------------------------------------------------------------//

struct UeWindowTotals
{
    Bits y_bits{0};
    Bits y_req_bits{0};
    std::int64_t sched_count{0};
    Bits dropped_overflow_bits{0};
    Bits dropped_deadline_bits{0};
    DelayHistogram delays;
};

//! Closed-window summary.
struct WindowRecord
{
    std::int64_t index{0};
    Tti start_tti{0};
    //! One past the last TTI of the window
    Tti end_tti{0};
    std::vector<Bits> y_bits;
    std::vector<Bits> y_req_bits;
    std::vector<double> throughput_bps;
    Bits total_bits{0};
    double total_throughput_bps{0};
    std::optional<double> jfi;
    std::optional<double> qoe_fi;
};

/*!
 * Per-window accumulators for every UE.
 *
 * JFI is taken over the delivered bits of all UEs; QoE_FI over the
 * (delivered, required) pairs of UEs that had any arrivals in the window.
 * An index that is undefined for the window is reported absent.
 */
class MetricsWindow
{
  public:
    MetricsWindow(std::size_t num_ues, Tti start_tti);

    void add_required(std::size_t ue, Bits bits) { ues_[ue].y_req_bits += bits; }
    void add_delivered(std::size_t ue, Bits bits) { ues_[ue].y_bits += bits; }
    void add_scheduled(std::size_t ue) { ++ues_[ue].sched_count; }
    void add_packet_delay(std::size_t ue, std::int64_t delay_ms)
    {
        ues_[ue].delays.add(delay_ms);
    }
    void add_overflow_drop(std::size_t ue, Bits bits)
    {
        ues_[ue].dropped_overflow_bits += bits;
    }
    void add_deadline_drop(std::size_t ue, Bits bits)
    {
        ues_[ue].dropped_deadline_bits += bits;
    }

    std::span<UeWindowTotals const> ues() const { return ues_; }
    Tti start_tti() const { return start_; }

    //! Summarize [start, end_tti) without resetting.
    WindowRecord summarize(Tti end_tti) const;

    //! Summarize, then zero every accumulator and restart at end_tti.
    WindowRecord close(Tti end_tti);

  private:
    std::vector<UeWindowTotals> ues_;
    Tti start_;
    std::int64_t index_{0};
};

//---------------------------------------------------------------------------//
// REPORTS
//---------------------------------------------------------------------------//

struct UeReport
{
    UeId ue{0};
    std::string traffic_class;
    double throughput_bps{0};
    Bits arrived_bits{0};
    Bits delivered_bits{0};
    Bits dropped_overflow_bits{0};
    Bits dropped_deadline_bits{0};
    Bits buffered_bits{0};
    double loss_rate{0};
    std::optional<double> mean_delay_ms;
    std::optional<std::int64_t> p99_delay_ms;
    std::uint64_t packets_delivered{0};
    std::int64_t sched_count{0};
    double final_offered_load_bps{0};
};

//! A source-rate adjustment emitted by the cross-layer hook.
struct AdjustmentEvent
{
    Tti tti{0};
    UeId ue{0};
    double occupancy_ratio{0};
    Tti starved_tti{0};
    double old_load_bps{0};
    double new_load_bps{0};
};

struct SimReport
{
    std::string policy;
    std::uint64_t seed{0};
    Tti duration_tti{0};
    double total_throughput_bps{0};
    Bits total_delivered_bits{0};
    std::int64_t idle_ttis{0};
    std::optional<double> jfi;
    std::optional<double> qoe_fi;
    std::vector<UeReport> ues;
    std::vector<WindowRecord> windows;
    std::vector<AdjustmentEvent> adjustments;
};

//---------------------------------------------------------------------------//
}  // namespace qsim
