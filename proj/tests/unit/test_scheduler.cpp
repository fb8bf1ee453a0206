// SPDX-License-Identifier: Apache-2.0
#include "qsim/scheduler.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "qsim/error.hpp"

using namespace qsim;

namespace
{
UeSchedRecord rec(UeId ue, double ratio, double alpha, double beta_s, double q,
                  double rate)
{
    UeSchedRecord r;
    r.ue = ue;
    r.buffersize_bits = 40'000'000;
    r.buffer_bits = static_cast<Bits>(ratio * 40'000'000);
    r.alpha = alpha;
    r.beta_s = beta_s;
    r.q = q;
    r.rate_bps = rate;
    return r;
}

std::vector<UeSchedRecord> random_inputs(std::mt19937_64& gen, std::size_t n)
{
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::uniform_int_distribution<int> cqi{1, 15};
    std::vector<UeSchedRecord> v(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        auto& r = v[i];
        r.ue = static_cast<UeId>(i + 1);
        r.buffersize_bits = 40'000'000;
        r.buffer_bits = unit(gen) < 0.15
                            ? 0
                            : static_cast<Bits>(unit(gen) * 40'000'000) + 1;
        r.alpha = std::pow(10.0, -1.0 - 6.0 * unit(gen));
        r.beta_s = 0.05 + 0.5 * unit(gen);
        r.q = 1.0 + 99.0 * unit(gen);
        r.rate_bps = 1e8 + 5.9e9 * unit(gen);
        r.hol_delay_s = 0.3 * unit(gen);
        r.avg_rate_bps = 1e8 + 5e9 * unit(gen);
        r.last_served_tti = static_cast<Tti>(unit(gen) * 1000) - 1;
    }
    return v;
}
}  // namespace

TEST_CASE("BCQQ priority")
{
    // 0.5 * (-ln 1e-6 / 0.3) * 1 * 1e8
    auto const u = rec(1, 0.5, 1e-6, 0.3, 1.0, 1e8);
    CHECK(bcqq_priority(u) == doctest::Approx(2.3025850929940457e9).epsilon(1e-9));

    auto empty = u;
    empty.buffer_bits = 0;
    CHECK(bcqq_priority(empty) == 0.0);

    auto const strict = rec(1, 0.5, 1e-6, 0.150, 1.0, 1e8);
    CHECK(bcqq_priority(strict) / bcqq_priority(u) == doctest::Approx(2.0));
}

TEST_CASE("M-LWDF priority")
{
    UeSchedRecord u = rec(1, 0.5, 1e-6, 0.3, 1.0, 2e8);
    u.avg_rate_bps = 1e8;
    u.hol_delay_s = 0.1;
    // (-ln 1e-6 / 0.3) * 0.1 * 2
    CHECK(mlwdf_priority(u) == doctest::Approx(9.210340371976184).epsilon(1e-12));
    u.hol_delay_s = 0;
    CHECK(mlwdf_priority(u) == 0.0);
}

TEST_CASE("PF priority")
{
    UeSchedRecord u = rec(1, 0.5, 1e-6, 0.3, 1.0, 3e8);
    u.avg_rate_bps = 3e8;
    CHECK(pf_priority(u) == 1.0);
    auto doubled = u;
    doubled.rate_bps *= 2;
    CHECK(pf_priority(doubled) == 2.0 * pf_priority(u));
    u.buffer_bits = 0;
    CHECK(pf_priority(u) == 0.0);
}

TEST_CASE("selection tie rule")
{
    std::vector<UeSchedRecord> in(5);
    double const prio[] = {3, 7, 7, 1, 0};
    Tti const served[] = {5, 2, 9, 1, 0};
    for (std::size_t i = 0; i < 5; ++i)
    {
        in[i].ue = static_cast<UeId>(i);
        in[i].buffer_bits = 100;
        in[i].last_served_tti = served[i];
    }
    auto const d = select_by_priority(in, prio);
    REQUIRE(d.selected_ue);
    CHECK(*d.selected_ue == 1);
    CHECK(d.priority == 7);

    // equal recency falls back to the lowest id
    in[2].last_served_tti = 2;
    CHECK(*select_by_priority(in, prio).selected_ue == 1);
}

TEST_CASE("idle slot and single backlogged UE")
{
    std::vector<UeSchedRecord> in(3);
    for (std::size_t i = 0; i < 3; ++i)
    {
        in[i].ue = static_cast<UeId>(i + 1);
        in[i].rate_bps = 1e9;
    }
    for (auto p : {Policy::bcqq, Policy::mlwdf, Policy::pf, Policy::rr})
    {
        auto const idle = select(in, p);
        CHECK_FALSE(idle.selected_ue);
        CHECK(idle.budget_bits == 0);
    }
    in[2].buffer_bits = 10;
    for (auto p : {Policy::bcqq, Policy::mlwdf, Policy::pf, Policy::rr})
    {
        auto const d = select(in, p);
        REQUIRE(d.selected_ue);
        CHECK(*d.selected_ue == 3);
        CHECK(d.budget_bits == 1'000'000);
    }
}

TEST_CASE("round robin serves the least recently served backlogged UE")
{
    std::vector<UeSchedRecord> in(3);
    for (std::size_t i = 0; i < 3; ++i)
    {
        in[i].ue = static_cast<UeId>(i + 1);
        in[i].buffer_bits = 1;
    }
    in[0].last_served_tti = 10;
    in[1].last_served_tti = 4;
    in[2].last_served_tti = 7;
    CHECK(*select(in, Policy::rr).selected_ue == 2);
}

TEST_CASE("selection never picks an empty buffer")
{
    std::mt19937_64 gen{5};
    for (int i = 0; i < 2000; ++i)
    {
        auto const in = random_inputs(gen, 6);
        for (auto p : {Policy::bcqq, Policy::mlwdf, Policy::pf, Policy::rr})
        {
            auto const d = select(in, p);
            if (d.selected_index)
                REQUIRE(in[*d.selected_index].buffer_bits > 0);
            else
                for (auto const& r : in)
                    REQUIRE(r.buffer_bits == 0);
        }
    }
}

TEST_CASE("BCQQ argmax invariant under common q scaling and log base")
{
    std::mt19937_64 gen{6};
    std::uniform_real_distribution<double> scale{1e-3, 1e3};
    for (int i = 0; i < 2000; ++i)
    {
        auto in = random_inputs(gen, 5);
        auto const base = select(in, Policy::bcqq);

        double const c = scale(gen);
        auto scaled = in;
        for (auto& r : scaled)
            r.q *= c;
        REQUIRE(select(scaled, Policy::bcqq).selected_ue == base.selected_ue);

        std::vector<double> log10_prio;
        for (auto const& r : in)
        {
            double const occ = static_cast<double>(r.buffer_bits)
                               / static_cast<double>(r.buffersize_bits);
            log10_prio.push_back(occ * (-std::log10(r.alpha) / r.beta_s) * r.q
                                 * r.rate_bps);
        }
        REQUIRE(select_by_priority(in, log10_prio).selected_ue == base.selected_ue);
    }
}

TEST_CASE("BCQQ priority strictly increases in occupancy, q and rate")
{
    std::mt19937_64 gen{8};
    std::uniform_real_distribution<double> up{1.01, 3.0};
    for (int i = 0; i < 10'000; ++i)
    {
        auto in = random_inputs(gen, 1);
        auto u = in[0];
        if (u.buffer_bits == 0)
            u.buffer_bits = 1000;
        u.buffer_bits = std::min<Bits>(u.buffer_bits, 30'000'000);
        double const p = bcqq_priority(u);

        auto more_buf = u;
        more_buf.buffer_bits = static_cast<Bits>(
            std::min(39.999e6, static_cast<double>(u.buffer_bits) * up(gen)) + 1);
        auto more_q = u;
        more_q.q *= up(gen);
        auto more_rate = u;
        more_rate.rate_bps *= up(gen);
        REQUIRE(bcqq_priority(more_buf) > p);
        REQUIRE(bcqq_priority(more_q) > p);
        REQUIRE(bcqq_priority(more_rate) > p);
    }
}

TEST_CASE("M-LWDF matches PF when QoS and HOL delay are shared")
{
    std::mt19937_64 gen{9};
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    for (int i = 0; i < 1000; ++i)
    {
        auto in = random_inputs(gen, 5);
        double const hol = 0.001 + 0.2 * unit(gen);
        for (auto& r : in)
        {
            r.alpha = 1e-6;
            r.beta_s = 0.3;
            r.hol_delay_s = hol;
        }
        REQUIRE(select(in, Policy::mlwdf).selected_ue
                == select(in, Policy::pf).selected_ue);
    }
}

TEST_CASE("average rate EMA")
{
    SUBCASE("decays to the floor but never zero")
    {
        double avg = 1e9;
        for (int i = 0; i < 100'000; ++i)
            avg = update_avg_rate(avg, 0);
        CHECK(avg == min_avg_rate_bps);
    }
    SUBCASE("converges to constant service")
    {
        // geometric series: error after n slots is (1 - 1/Tc)^n of the start
        double avg = min_avg_rate_bps;
        Bits const per_slot = 100'000;  // 1e8 bps
        for (int i = 0; i < 5000; ++i)
            avg = update_avg_rate(avg, per_slot);
        CHECK(std::abs(avg - 1e8) / 1e8 < 0.01);
        double const predicted = 1e8 - (1e8 - 1.0) * std::pow(1 - 1e-3, 5000);
        CHECK(avg == doctest::Approx(predicted).epsilon(1e-9));
    }
    SUBCASE("unit window tracks the last slot")
    {
        CHECK(update_avg_rate(5e8, 2'000, 1.0) == 2e6);
    }
}

TEST_CASE("policy names")
{
    CHECK(policy_from_string("bcqq") == Policy::bcqq);
    CHECK(policy_from_string("MLWDF") == Policy::mlwdf);
    CHECK(to_string(Policy::pf) == "PF");
    CHECK_THROWS_AS(policy_from_string("LEASCH"), ConfigError);
}
