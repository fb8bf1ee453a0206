// SPDX-License-Identifier: Apache-2.0
#include "qsim/metrics.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

using namespace qsim;

namespace
{
// Independent recomputation: unordered pairs, doubled.
double qoe_fi_unordered(std::vector<SatisfactionPair> const& pairs)
{
    double sum = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            sum += std::abs(pairs[i].y / pairs[i].y_req
                            - pairs[j].y / pairs[j].y_req);
    return 2 * sum;
}

std::vector<SatisfactionPair> from_ratios(std::vector<double> const& ratios)
{
    std::vector<SatisfactionPair> v;
    for (double r : ratios)
        v.push_back({r * 8.0, 8.0});
    return v;
}
}  // namespace

TEST_CASE("Jain's index")
{
    std::vector<double> const eq{2.5, 2.5, 2.5, 2.5};
    CHECK(jfi(eq) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> const ramp{1, 2, 3};
    CHECK(std::abs(jfi(ramp) - 6.0 / 7.0) < 1e-12);
    std::vector<double> const single{1, 0, 0, 0};
    CHECK(jfi(single) == 0.25);
    CHECK_THROWS(jfi(std::vector<double>{}));
    CHECK_THROWS(jfi(std::vector<double>{0, 0}));
}

TEST_CASE("Jain's index is scale invariant")
{
    std::mt19937_64 gen{1};
    std::uniform_real_distribution<double> val{0.0, 1e9}, scale{1e-6, 1e6};
    for (int i = 0; i < 1000; ++i)
    {
        std::vector<double> xs(2 + i % 9);
        for (auto& x : xs)
            x = val(gen);
        double const c = scale(gen);
        std::vector<double> scaled;
        for (double x : xs)
            scaled.push_back(c * x);
        REQUIRE(std::abs(jfi(scaled) - jfi(xs)) <= 1e-12 * jfi(xs));
    }
}

TEST_CASE("QoE fairness index")
{
    CHECK(qoe_fi(from_ratios({0.5, 1.0})) == 1.0);
    CHECK(qoe_fi(from_ratios({1.0, 0.5, 0.25})) == 3.0);
    CHECK(qoe_fi(from_ratios({0.3, 0.3, 0.3, 0.3})) == 0.0);
    CHECK_THROWS(qoe_fi(from_ratios({0.5})));
    std::vector<SatisfactionPair> zero{{1, 2}, {1, 0}};
    CHECK_THROWS(qoe_fi(zero));
}

TEST_CASE("QoE fairness index properties")
{
    std::mt19937_64 gen{2};
    std::uniform_real_distribution<double> val{0.0, 1e8}, scale{1e-3, 1e3};
    for (int i = 0; i < 1000; ++i)
    {
        std::vector<SatisfactionPair> pairs(2 + i % 7);
        for (auto& p : pairs)
        {
            p.y_req = val(gen) + 1.0;
            p.y = val(gen);
        }
        double const fi = qoe_fi(pairs);
        REQUIRE(fi == doctest::Approx(qoe_fi_unordered(pairs)).epsilon(1e-12));

        double const c = scale(gen);
        auto scaled = pairs;
        for (auto& p : scaled)
        {
            p.y *= c;
            p.y_req *= c;
        }
        REQUIRE(qoe_fi(scaled) == doctest::Approx(fi).epsilon(1e-9));
        REQUIRE(fi > 0.0);
    }
}

TEST_CASE("delay histogram")
{
    DelayHistogram h;
    CHECK_FALSE(h.mean());
    CHECK_FALSE(h.percentile(99));
    for (int d = 1; d <= 100; ++d)
        h.add(d);
    CHECK(*h.mean() == doctest::Approx(50.5));
    CHECK(*h.percentile(99) == 99);
    CHECK(*h.percentile(100) == 100);
    CHECK(*h.percentile(50) == 50);
    CHECK_THROWS(h.add(-1));
}

TEST_CASE("window close")
{
    SUBCASE("no arrivals")
    {
        MetricsWindow w{3, 0};
        auto const r = w.close(1000);
        CHECK_FALSE(r.jfi);
        CHECK_FALSE(r.qoe_fi);
        CHECK(r.total_throughput_bps == 0.0);
    }
    SUBCASE("single UE")
    {
        MetricsWindow w{1, 0};
        w.add_required(0, 100);
        w.add_delivered(0, 50);
        auto const r = w.close(10);
        CHECK_FALSE(r.qoe_fi);
        CHECK(r.jfi == 1.0);
    }
    SUBCASE("known values and reset")
    {
        // y = (1, 2, 3, 0) Mb over Y = (2, 2, 12, 0) Mb, 1 s window
        MetricsWindow w{4, 0};
        Bits const y[] = {1'000'000, 2'000'000, 3'000'000, 0};
        Bits const req[] = {2'000'000, 2'000'000, 12'000'000, 0};
        for (std::size_t i = 0; i < 4; ++i)
        {
            w.add_required(i, req[i]);
            w.add_delivered(i, y[i]);
        }
        w.add_scheduled(1);
        auto const r = w.close(1000);
        // jfi over (1,2,3,0): 36 / (4 * 14)
        REQUIRE(r.jfi);
        CHECK(std::abs(*r.jfi - 36.0 / 56.0) < 1e-12);
        // ratios (0.5, 1, 0.25); UE 4 excluded: 2 * (0.5 + 0.25 + 0.75)
        REQUIRE(r.qoe_fi);
        CHECK(*r.qoe_fi == 3.0);
        CHECK(r.total_bits == 6'000'000);
        CHECK(r.total_throughput_bps == 6e6);
        CHECK(r.throughput_bps[2] == 3e6);
        CHECK(r.end_tti == 1000);

        auto const again = w.close(2000);
        CHECK(again.index == 1);
        CHECK(again.start_tti == 1000);
        CHECK(again.total_bits == 0);
        CHECK(w.ues()[1].sched_count == 0);
    }
}
