// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/qoe.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <deque>
#include <memory>

#include "types.hpp"

namespace qsim
{
//---------------------------------------------------------------------------//
/*!
 * Window accounting behind the per-UE QoE multiplier.
 *
 * \c y_bits counts bits delivered in the current window and \c y_req_bits
 * the bits that had to be delivered to satisfy the user (every arrived bit).
 */
struct QoeState
{
    UeId ue_id{0};
    Bits y_bits{0};
    Bits y_req_bits{0};
    double q{1.0};
};

//! Add this TTI's arrivals to the required volume.
QoeState update_requirement(QoeState state, Bits arrived_bits_this_tti);

//! Pluggable mapping from window accounting to the scheduler multiplier.
class QoeModel
{
  public:
    virtual ~QoeModel() = default;
    virtual double q(Bits y_bits, Bits y_req_bits) const = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Unmet-demand ratio: q = clamp(y_req / max(y, 1), 1, q_max).
 *
 * This is the reciprocal of the satisfaction ratio y / y_req, so a user
 * that has received everything it asked for gets q = 1 and an underserved
 * one gets a proportionally larger multiplier.
 */
class UnmetDemandModel final : public QoeModel
{
  public:
    explicit UnmetDemandModel(double q_max = 100.0);

    double q(Bits y_bits, Bits y_req_bits) const override;
    double q_max() const { return q_max_; }

  private:
    double q_max_;
};

//! Default model applied to a state.
double q_of(QoeState const& state, double q_max = 100.0);

//---------------------------------------------------------------------------//
/*!
 * QoE feedback channel with a fixed delay in TTIs.
 *
 * \c publish records the q computed at the UE this TTI; \c observed returns
 * the value the scheduler sees, i.e. the one published \c delay TTIs ago
 * (1 before anything has arrived).
 */
class QoeFeedback
{
  public:
    explicit QoeFeedback(std::int64_t delay_tti);

    void publish(double q);
    double observed() const;

  private:
    std::int64_t delay_;
    std::deque<double> history_;
};

//---------------------------------------------------------------------------//
}  // namespace qsim
