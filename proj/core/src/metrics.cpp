// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file metrics.cpp
//---------------------------------------------------------------------------//
#include "qsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qsim
{
double jfi(std::span<double const> xs)
{
    if (xs.empty())
        throw std::invalid_argument("jfi of an empty vector");
    double sum = 0;
    double sum_sq = 0;
    for (double x : xs)
    {
        if (x < 0)
            throw std::invalid_argument("jfi requires non-negative values");
        sum += x;
        sum_sq += x * x;
    }
    if (sum_sq == 0)
        throw std::invalid_argument("jfi of an all-zero vector");
    return (sum * sum) / (static_cast<double>(xs.size()) * sum_sq);
}

double qoe_fi(std::span<SatisfactionPair const> pairs)
{
    if (pairs.size() < 2)
        throw std::invalid_argument("qoe_fi needs at least two users");
    std::vector<double> ratios;
    ratios.reserve(pairs.size());
    for (auto const& p : pairs)
    {
        if (!(p.y_req > 0))
            throw std::invalid_argument("qoe_fi requires positive Y_QoE");
        ratios.push_back(p.y / p.y_req);
    }
    double total = 0;
    for (std::size_t i = 0; i < ratios.size(); ++i)
    {
        for (std::size_t j = 0; j < ratios.size(); ++j)
        {
            if (i != j)
                total += std::abs(ratios[i] - ratios[j]);
        }
    }
    return total;
}

void DelayHistogram::add(std::int64_t delay_ms)
{
    if (delay_ms < 0)
        throw std::invalid_argument("negative packet delay");
    auto const idx = static_cast<std::size_t>(delay_ms);
    if (idx >= counts_.size())
        counts_.resize(idx + 1, 0);
    ++counts_[idx];
    ++total_;
    sum_ += delay_ms;
}

std::optional<double> DelayHistogram::mean() const
{
    if (total_ == 0)
        return std::nullopt;
    return static_cast<double>(sum_) / static_cast<double>(total_);
}

std::optional<std::int64_t> DelayHistogram::percentile(double p) const
{
    if (total_ == 0)
        return std::nullopt;
    auto const rank = static_cast<std::uint64_t>(
        std::ceil(p / 100.0 * static_cast<double>(total_)));
    std::uint64_t seen = 0;
    for (std::size_t d = 0; d < counts_.size(); ++d)
    {
        seen += counts_[d];
        if (seen >= rank && seen > 0)
            return static_cast<std::int64_t>(d);
    }
    return static_cast<std::int64_t>(counts_.size()) - 1;
}

MetricsWindow::MetricsWindow(std::size_t num_ues, Tti start_tti)
    : ues_(num_ues), start_(start_tti)
{
}

WindowRecord MetricsWindow::summarize(Tti end_tti) const
{
    WindowRecord rec;
    rec.index = index_;
    rec.start_tti = start_;
    rec.end_tti = end_tti;
    double const span_s = static_cast<double>(end_tti - start_) * tti_seconds;

    std::vector<double> delivered;
    std::vector<SatisfactionPair> pairs;
    for (auto const& u : ues_)
    {
        rec.y_bits.push_back(u.y_bits);
        rec.y_req_bits.push_back(u.y_req_bits);
        rec.throughput_bps.push_back(
            span_s > 0 ? static_cast<double>(u.y_bits) / span_s : 0.0);
        rec.total_bits += u.y_bits;
        delivered.push_back(static_cast<double>(u.y_bits));
        if (u.y_req_bits > 0)
        {
            pairs.push_back({static_cast<double>(u.y_bits),
                             static_cast<double>(u.y_req_bits)});
        }
    }
    for (double t : rec.throughput_bps)
        rec.total_throughput_bps += t;
    if (rec.total_bits > 0)
        rec.jfi = jfi(delivered);
    if (pairs.size() >= 2)
        rec.qoe_fi = qoe_fi(pairs);
    return rec;
}

WindowRecord MetricsWindow::close(Tti end_tti)
{
    WindowRecord rec = summarize(end_tti);
    for (auto& u : ues_)
        u = UeWindowTotals{};
    start_ = end_tti;
    ++index_;
    return rec;
}

//---------------------------------------------------------------------------//
}  // namespace qsim
