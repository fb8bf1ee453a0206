// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qoe.cpp
//---------------------------------------------------------------------------//
#include "qsim/qoe.hpp"

#include <algorithm>
#include <cmath>

#include "qsim/error.hpp"

namespace qsim
{
QoeState update_requirement(QoeState state, Bits arrived_bits_this_tti)
{
    state.y_req_bits += arrived_bits_this_tti;
    return state;
}

UnmetDemandModel::UnmetDemandModel(double q_max) : q_max_(q_max)
{
    if (!(q_max >= 1.0) || !std::isfinite(q_max))
        throw ConfigError("q_max", "must be finite and at least 1");
}

double UnmetDemandModel::q(Bits y_bits, Bits y_req_bits) const
{
    double const ratio = static_cast<double>(y_req_bits)
                         / static_cast<double>(std::max<Bits>(y_bits, 1));
    return std::clamp(ratio, 1.0, q_max_);
}

double q_of(QoeState const& state, double q_max)
{
    return UnmetDemandModel{q_max}.q(state.y_bits, state.y_req_bits);
}

QoeFeedback::QoeFeedback(std::int64_t delay_tti) : delay_(delay_tti)
{
    if (delay_tti < 0)
        throw ConfigError("feedback_delay_tti", "must be non-negative");
}

void QoeFeedback::publish(double q)
{
    history_.push_back(q);
    while (static_cast<std::int64_t>(history_.size()) > delay_ + 1)
        history_.pop_front();
}

double QoeFeedback::observed() const
{
    if (static_cast<std::int64_t>(history_.size()) <= delay_)
        return 1.0;
    return history_.front();
}

//---------------------------------------------------------------------------//
}  // namespace qsim
