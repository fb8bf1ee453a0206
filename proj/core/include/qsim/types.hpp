// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/types.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>

namespace qsim
{
//! Data quantities are always whole bits.
using Bits = std::int64_t;
//! Transmission time interval index (one TTI is one millisecond).
using Tti = std::int64_t;
//! User equipment identifier as it appears in the scenario.
using UeId = std::uint32_t;

inline constexpr double tti_seconds = 0.001;
inline constexpr double ttis_per_second = 1000.0;

}  // namespace qsim
