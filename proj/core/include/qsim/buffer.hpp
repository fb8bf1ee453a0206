// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/buffer.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "traffic.hpp"
#include "types.hpp"

namespace qsim
{
//! Cumulative bit counters of a UE buffer.
struct BufferCounters
{
    Bits arrived_bits{0};
    Bits delivered_bits{0};
    Bits dropped_overflow_bits{0};
    Bits dropped_deadline_bits{0};

    bool operator==(BufferCounters const&) const = default;
};

//! A packet whose last bit left the buffer.
struct DeliveredPacket
{
    Packet packet;
    Tti delivered_tti{0};
    //! Completion at the end of the delivery slot: delivered - arrival + 1.
    std::int64_t delay_ms{0};
};

struct DrainResult
{
    Bits tx_bits{0};
    std::vector<DeliveredPacket> delivered;
};

//---------------------------------------------------------------------------//
/*!
 * Per-UE downlink FIFO with a fixed capacity.
 *
 * Overflowing packets are dropped whole at the tail; packets whose deadline
 * has been reached are removed from anywhere in the queue with their
 * untransmitted remainder counted as deadline drops. The identity
 *   arrived = delivered + dropped_overflow + dropped_deadline + occupied
 * holds exactly after every operation.
 */
class UeBuffer
{
  public:
    explicit UeBuffer(Bits capacity_bits);

    //! Append the packet whole, or drop it whole if it does not fit.
    //! Returns whether the packet was accepted.
    bool enqueue(Packet const& pkt);

    //! Drop every packet with deadline_tti <= now; returns the dropped bits.
    Bits expire(Tti now);

    //! Transmit up to budget_bits from the head, splitting packets.
    DrainResult drain(Bits budget_bits, Tti now);

    Bits capacity_bits() const { return capacity_; }
    Bits occupied_bits() const { return occupied_; }
    bool empty() const { return queue_.empty(); }
    std::size_t packet_count() const { return queue_.size(); }
    double occupancy_ratio() const
    {
        return static_cast<double>(occupied_) / static_cast<double>(capacity_);
    }

    //! Arrival TTI of the head-of-line packet, if any.
    std::optional<Tti> head_arrival_tti() const;

    BufferCounters const& counters() const { return counters_; }

    //! Check the conservation identity and the bookkeeping of occupied bits.
    bool consistent() const;

  private:
    struct Entry
    {
        Packet packet;
        Bits remaining_bits;
    };

    Bits capacity_;
    Bits occupied_{0};
    std::deque<Entry> queue_;
    BufferCounters counters_;
};

//---------------------------------------------------------------------------//
}  // namespace qsim
