// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rng.cpp
//---------------------------------------------------------------------------//
#include "qsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qsim
{
namespace
{
constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;
constexpr double two_pow_m53 = 1.0 / 9007199254740992.0;

// Largest per-chunk mean for sequential Poisson inversion; exp(-30) is far
// from underflow and keeps the search short.
constexpr double poisson_chunk = 30.0;

std::int64_t poisson_inversion(RngStream& rng, double mean)
{
    double const u = rng.uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u >= cdf)
    {
        ++k;
        p *= mean / static_cast<double>(k);
        double const next = cdf + p;
        if (next == cdf)
        {
            break;
        }
        cdf = next;
    }
    return k;
}
}  // namespace

std::uint64_t mix64(std::uint64_t x)
{
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint32_t ue, StreamPurpose purpose)
{
    std::uint64_t const id = (static_cast<std::uint64_t>(ue) << 32)
                             | static_cast<std::uint64_t>(purpose);
    key_ = mix64(mix64(seed + golden_gamma) ^ mix64(id));
}

std::uint64_t RngStream::next_u64()
{
    ++counter_;
    return mix64(key_ + counter_ * golden_gamma);
}

double RngStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * two_pow_m53;
}

double RngStream::uniform_pos()
{
    return static_cast<double>((next_u64() >> 11) + 1) * two_pow_m53;
}

double RngStream::exponential(double mean)
{
    return -mean * std::log(this->uniform_pos());
}

std::int64_t RngStream::poisson(double mean)
{
    if (!(mean >= 0.0) || !std::isfinite(mean))
    {
        throw std::invalid_argument("poisson mean must be finite and >= 0");
    }
    // Sum of independent Poisson chunks is Poisson with the summed mean.
    std::int64_t total = 0;
    double remaining = mean;
    while (remaining > poisson_chunk)
    {
        total += poisson_inversion(*this, poisson_chunk);
        remaining -= poisson_chunk;
    }
    if (remaining > 0.0)
    {
        total += poisson_inversion(*this, remaining);
    }
    return total;
}

//---------------------------------------------------------------------------//
}  // namespace qsim
