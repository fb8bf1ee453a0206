// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file traffic.cpp
//---------------------------------------------------------------------------//
#include "qsim/traffic.hpp"

#include <algorithm>
#include <cmath>

#include "qsim/error.hpp"

namespace qsim
{
namespace
{
constexpr double adjustment_floor = 0.1;

Packet make_packet(FlowSpec const& spec, Bits size, Tti tti)
{
    return Packet{size, tti, tti + spec.beta_ms};
}
}  // namespace

std::string_view to_string(TrafficClass c)
{
    switch (c)
    {
        case TrafficClass::ftp_download:
            return "FtpDownload";
        case TrafficClass::live_hd_video:
            return "LiveHdVideo";
    }
    return "?";
}

TrafficClass traffic_class_from_string(std::string_view s)
{
    if (s == "FtpDownload")
        return TrafficClass::ftp_download;
    if (s == "LiveHdVideo")
        return TrafficClass::live_hd_video;
    throw ConfigError("class", "unknown traffic class '" + std::string(s) + "'");
}

void validate(FlowSpec const& spec)
{
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw ConfigError("alpha", "must lie strictly between 0 and 1");
    if (spec.beta_ms < 1)
        throw ConfigError("beta_ms", "must be at least 1");
    if (!(spec.offered_load_bps > 0.0) || !std::isfinite(spec.offered_load_bps))
        throw ConfigError("offered_load_bps", "must be positive and finite");
    if (spec.original_load_bps < 0.0 || !std::isfinite(spec.original_load_bps))
        throw ConfigError("original_load_bps", "must be non-negative and finite");
    switch (spec.cls)
    {
        case TrafficClass::ftp_download:
            if (spec.mean_packet_bits <= 0)
                throw ConfigError("mean_packet_bits", "must be positive");
            break;
        case TrafficClass::live_hd_video:
            if (spec.max_packet_bits <= 0)
                throw ConfigError("max_packet_bits", "must be positive");
            if (spec.frame_interval_ms < 1)
                throw ConfigError("frame_interval_ms", "must be at least 1");
            break;
    }
}

Bits exponential_size_bits(double mean_bits, double uniform_pos)
{
    double const x = -mean_bits * std::log(uniform_pos);
    return std::max<Bits>(1, std::llround(x));
}

std::vector<Packet> ftp_arrivals(FlowSpec const& spec, Tti tti, RngStream& rng)
{
    if (spec.cls != TrafficClass::ftp_download)
        throw std::invalid_argument("ftp_arrivals requires an FTP flow");

    double const per_tti = spec.offered_load_bps / ttis_per_second
                           / static_cast<double>(spec.mean_packet_bits);
    auto const count = rng.poisson(per_tti);

    std::vector<Packet> result;
    result.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i)
    {
        auto const size = exponential_size_bits(
            static_cast<double>(spec.mean_packet_bits), rng.uniform_pos());
        result.push_back(make_packet(spec, size, tti));
    }
    return result;
}

double video_frame_mean_bits(FlowSpec const& spec)
{
    return spec.offered_load_bps * static_cast<double>(spec.frame_interval_ms)
           / 1000.0;
}

std::vector<Packet> video_arrivals(FlowSpec const& spec, Tti tti, RngStream& rng)
{
    if (spec.cls != TrafficClass::live_hd_video)
        throw std::invalid_argument("video_arrivals requires a video flow");
    if (tti % spec.frame_interval_ms != 0)
        return {};

    auto size = exponential_size_bits(video_frame_mean_bits(spec),
                                      rng.uniform_pos());
    size = std::min(size, spec.max_packet_bits);
    return {make_packet(spec, size, tti)};
}

std::vector<Packet> arrivals(FlowSpec const& spec, Tti tti, RngStream& rng)
{
    switch (spec.cls)
    {
        case TrafficClass::ftp_download:
            return ftp_arrivals(spec, tti, rng);
        case TrafficClass::live_hd_video:
            return video_arrivals(spec, tti, rng);
    }
    return {};
}

FlowSpec apply_adjustment(FlowSpec const& spec, double factor)
{
    if (!(factor > 0.0 && factor <= 1.0))
        throw ConfigError("factor", "adjustment factor must lie in (0, 1]");
    if (!spec.adaptive)
        return spec;

    FlowSpec result = spec;
    double const original = spec.original_load_bps > 0.0
                                ? spec.original_load_bps
                                : spec.offered_load_bps;
    result.original_load_bps = original;
    result.offered_load_bps = std::max(spec.offered_load_bps * factor,
                                       adjustment_floor * original);
    return result;
}

double expected_arrival_bps(FlowSpec const& spec)
{
    switch (spec.cls)
    {
        case TrafficClass::ftp_download:
            return spec.offered_load_bps;
        case TrafficClass::live_hd_video: {
            double const m = video_frame_mean_bits(spec);
            double const cap = static_cast<double>(spec.max_packet_bits);
            double const truncated = m * -std::expm1(-cap / m);
            return truncated * 1000.0
                   / static_cast<double>(spec.frame_interval_ms);
        }
    }
    return 0.0;
}

//---------------------------------------------------------------------------//
}  // namespace qsim
