// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/channel.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <vector>

#include "rng.hpp"

namespace qsim
{
inline constexpr int cqi_min = 1;
inline constexpr int cqi_max = 15;

//! Spectral efficiency (bit/s/Hz) of the 4-bit CQI table, index = cqi - 1.
inline constexpr std::array<double, 15> cqi_efficiency = {
    0.1523, 0.2344, 0.3770, 0.6016, 0.8770, 1.1758, 1.4766, 1.9141,
    2.4063, 2.7305, 3.3223, 3.9023, 4.5234, 5.1152, 5.5547};

struct ChannelParams
{
    double peak_rate_bps{6e9};
    double walk_prob{0.1};
    std::vector<int> initial_cqi;

    bool operator==(ChannelParams const&) const = default;
};

//! Throws ConfigError on invalid peak rate, walk probability or CQI values.
void validate(ChannelParams const& params);

//---------------------------------------------------------------------------//
/*!
 * Slow-fading CQI process for one UE: a +/-1 random walk clamped to [1, 15].
 */
class CqiState
{
  public:
    CqiState(int cqi, RngStream rng);

    int cqi() const { return cqi_; }

    //! Advance one TTI.
    void step(double walk_prob);

  private:
    int cqi_;
    RngStream rng_;
};

//! Pure transition: with probability walk_prob move by +/-1 and clamp.
int cqi_step(int cqi, double walk_prob, RngStream& rng);

//! Achievable rate for a CQI, normalized so CQI 15 yields the peak rate.
double rate_of(int cqi, ChannelParams const& params);

//---------------------------------------------------------------------------//
}  // namespace qsim
