// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/traffic.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <string_view>
#include <vector>

#include "rng.hpp"
#include "types.hpp"

namespace qsim
{
enum class TrafficClass
{
    ftp_download,
    live_hd_video,
};

std::string_view to_string(TrafficClass c);
//! Parse "FtpDownload" / "LiveHdVideo"; throws ConfigError on anything else.
TrafficClass traffic_class_from_string(std::string_view s);

//---------------------------------------------------------------------------//
/*!
 * Traffic type, QoS targets and generator parameters for one UE.
 *
 * \c alpha is the target packet loss rate and \c beta_ms the acceptable
 * delay. FTP uses \c mean_packet_bits; video uses \c max_packet_bits and
 * \c frame_interval_ms. \c original_load_bps remembers the configured load
 * so source adaptation can enforce its floor.
 */
struct FlowSpec
{
    UeId ue_id{0};
    TrafficClass cls{TrafficClass::ftp_download};
    double alpha{1e-6};
    std::int64_t beta_ms{300};
    Bits mean_packet_bits{500'000};
    Bits max_packet_bits{2'000'000};
    std::int64_t frame_interval_ms{16};
    double offered_load_bps{0};
    double original_load_bps{0};
    bool adaptive{false};

    bool operator==(FlowSpec const&) const = default;
};

struct Packet
{
    Bits size_bits{0};
    Tti arrival_tti{0};
    Tti deadline_tti{0};

    bool operator==(Packet const&) const = default;
};

//! Throw ConfigError (naming the field) if the spec violates its invariants.
void validate(FlowSpec const& spec);

//! Round an exponential deviate to whole bits, at least one.
Bits exponential_size_bits(double mean_bits, double uniform_pos);

//! Poisson arrivals with exponential sizes for an FTP flow.
std::vector<Packet> ftp_arrivals(FlowSpec const& spec, Tti tti, RngStream& rng);

//! One truncated-exponential frame per frame interval for a video flow.
std::vector<Packet> video_arrivals(FlowSpec const& spec, Tti tti, RngStream& rng);

//! Dispatch on the spec's traffic class.
std::vector<Packet> arrivals(FlowSpec const& spec, Tti tti, RngStream& rng);

//! Scale the offered load of an adaptive flow, never below 10% of original.
FlowSpec apply_adjustment(FlowSpec const& spec, double factor);

//! Mean untruncated video frame size implied by the offered load.
double video_frame_mean_bits(FlowSpec const& spec);

/*!
 * Long-run arrival rate in bits per second.
 *
 * Equal to the offered load for FTP. For video the exponential frame size is
 * capped at \c max_packet_bits, so the rate is the truncated mean
 * m (1 - exp(-cap / m)) per frame interval.
 */
double expected_arrival_bps(FlowSpec const& spec);

//---------------------------------------------------------------------------//
}  // namespace qsim
