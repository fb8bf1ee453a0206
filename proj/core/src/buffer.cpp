// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file buffer.cpp
//---------------------------------------------------------------------------//
#include "qsim/buffer.hpp"

#include <algorithm>
#include <numeric>

#include "qsim/error.hpp"

namespace qsim
{
UeBuffer::UeBuffer(Bits capacity_bits) : capacity_(capacity_bits)
{
    if (capacity_bits <= 0)
        throw ConfigError("buffersize_bits", "must be positive");
}

bool UeBuffer::enqueue(Packet const& pkt)
{
    if (pkt.size_bits <= 0)
        throw std::invalid_argument("packet size must be positive");

    counters_.arrived_bits += pkt.size_bits;
    if (occupied_ + pkt.size_bits > capacity_)
    {
        counters_.dropped_overflow_bits += pkt.size_bits;
        return false;
    }
    queue_.push_back(Entry{pkt, pkt.size_bits});
    occupied_ += pkt.size_bits;
    return true;
}

Bits UeBuffer::expire(Tti now)
{
    Bits dropped = 0;
    auto const expired = [&](Entry const& e) {
        return e.packet.deadline_tti <= now;
    };
    for (auto const& e : queue_)
    {
        if (expired(e))
            dropped += e.remaining_bits;
    }
    if (dropped > 0)
    {
        std::erase_if(queue_, expired);
        occupied_ -= dropped;
        counters_.dropped_deadline_bits += dropped;
    }
    return dropped;
}

DrainResult UeBuffer::drain(Bits budget_bits, Tti now)
{
    if (budget_bits < 0)
        throw std::invalid_argument("drain budget must be non-negative");

    DrainResult result;
    Bits budget = budget_bits;
    while (budget > 0 && !queue_.empty())
    {
        Entry& head = queue_.front();
        Bits const sent = std::min(budget, head.remaining_bits);
        head.remaining_bits -= sent;
        budget -= sent;
        result.tx_bits += sent;
        if (head.remaining_bits == 0)
        {
            result.delivered.push_back(DeliveredPacket{
                head.packet, now, now - head.packet.arrival_tti + 1});
            queue_.pop_front();
        }
    }
    occupied_ -= result.tx_bits;
    counters_.delivered_bits += result.tx_bits;
    return result;
}

std::optional<Tti> UeBuffer::head_arrival_tti() const
{
    if (queue_.empty())
        return std::nullopt;
    return queue_.front().packet.arrival_tti;
}

bool UeBuffer::consistent() const
{
    Bits const queued = std::accumulate(
        queue_.begin(), queue_.end(), Bits{0},
        [](Bits acc, Entry const& e) { return acc + e.remaining_bits; });
    auto const& c = counters_;
    return queued == occupied_ && occupied_ <= capacity_ && occupied_ >= 0
           && c.arrived_bits
                  == c.delivered_bits + c.dropped_overflow_bits
                         + c.dropped_deadline_bits + occupied_;
}

//---------------------------------------------------------------------------//
}  // namespace qsim
