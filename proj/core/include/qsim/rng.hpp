// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/rng.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>

namespace qsim
{
//! What a random substream is used for.
enum class StreamPurpose : std::uint32_t
{
    traffic = 1,
    channel = 2,
    synthetic = 3,
};

//---------------------------------------------------------------------------//
/*!
 * Counter-based random stream.
 *
 * Each draw is a pure function of (seed, ue, purpose, counter): the key is
 * derived once from the seed and the substream identity, and every output
 * is a SplitMix64 finalization of key + counter * golden-gamma. Two streams
 * with different (ue, purpose) never share state, so changing one flow's
 * consumption leaves every other flow's sequence untouched.
 */
class RngStream
{
  public:
    RngStream() = default;
    RngStream(std::uint64_t seed, std::uint32_t ue, StreamPurpose purpose);

    //! Next raw 64-bit value
    std::uint64_t next_u64();

    //! Uniform in the half-open interval (0, 1]
    double uniform_pos();

    //! Uniform in [0, 1)
    double uniform();

    //! Exponential deviate with the given mean (inverse CDF)
    double exponential(double mean);

    //! Poisson count with the given mean
    std::int64_t poisson(double mean);

    std::uint64_t counter() const { return counter_; }
    std::uint64_t key() const { return key_; }

  private:
    std::uint64_t key_{0};
    std::uint64_t counter_{0};
};

//! SplitMix64 finalizer
std::uint64_t mix64(std::uint64_t x);

//---------------------------------------------------------------------------//
}  // namespace qsim
