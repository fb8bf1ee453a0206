// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file channel.cpp
//---------------------------------------------------------------------------//
#include "qsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsim/error.hpp"

namespace qsim
{
void validate(ChannelParams const& params)
{
    if (!(params.peak_rate_bps > 0.0) || !std::isfinite(params.peak_rate_bps))
        throw ConfigError("peak_rate_bps", "must be positive and finite");
    if (!(params.walk_prob >= 0.0 && params.walk_prob <= 1.0))
        throw ConfigError("walk_prob", "must lie in [0, 1]");
    for (int cqi : params.initial_cqi)
    {
        if (cqi < cqi_min || cqi > cqi_max)
            throw ConfigError("initial_cqi",
                              "CQI " + std::to_string(cqi)
                                  + " outside [1, 15]");
    }
}

int cqi_step(int cqi, double walk_prob, RngStream& rng)
{
    if (rng.uniform() >= walk_prob)
        return cqi;
    int const delta = (rng.next_u64() >> 63) ? 1 : -1;
    return std::clamp(cqi + delta, cqi_min, cqi_max);
}

CqiState::CqiState(int cqi, RngStream rng) : cqi_(cqi), rng_(rng)
{
    if (cqi < cqi_min || cqi > cqi_max)
        throw ConfigError("initial_cqi", "CQI outside [1, 15]");
}

void CqiState::step(double walk_prob)
{
    cqi_ = cqi_step(cqi_, walk_prob, rng_);
}

double rate_of(int cqi, ChannelParams const& params)
{
    if (cqi < cqi_min || cqi > cqi_max)
        throw std::out_of_range("CQI " + std::to_string(cqi)
                                + " outside [1, 15]");
    double const relative = cqi_efficiency[static_cast<std::size_t>(cqi - 1)]
                            / cqi_efficiency.back();
    return params.peak_rate_bps * relative;
}

//---------------------------------------------------------------------------//
}  // namespace qsim
