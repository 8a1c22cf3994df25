#include <doctest.h>

#include <random>
#include <vector>

#include "lhall/ehrhart.hpp"
#include "oracles.hpp"

using namespace lhall;

namespace {

std::vector<bigint> eulerian_delta(int n) {
    // the delta-vector of the unit n-cube padded to length n+1
    std::vector<bigint> d = oracles::eulerian_row_bruteforce(n);
    d.push_back(0);
    return d;
}

} // namespace

TEST_CASE("delta via the parallelepiped grading") {
    CHECK(delta_via_parallelepiped(seq({2, 3})).entries == std::vector<bigint>{1, 4, 1});
    CHECK(delta_via_parallelepiped(seq({1})).entries == std::vector<bigint>{1, 0});

    for (int n = 1; n <= 6; ++n)
        CHECK(delta_via_parallelepiped(seq::parse("lecture:" + std::to_string(n))).entries ==
              eulerian_delta(n));
}

TEST_CASE("delta via weighted descents of padded words") {
    CHECK(delta_via_descents(seq({2, 3})).entries == std::vector<bigint>{1, 4, 1});
    CHECK(delta_via_descents(seq({1, 1, 1})).entries == std::vector<bigint>{1, 0, 0, 0});

    for (int n = 1; n <= 6; ++n)
        CHECK(delta_via_descents(seq::parse("anti:" + std::to_string(n))).entries ==
              eulerian_delta(n));
}

TEST_CASE("delta via weighted ascents when s starts with 1") {
    CHECK(delta_via_ascents(seq({1, 2})).entries == std::vector<bigint>{1, 1, 0});
    CHECK(delta_via_ascents(seq({1, 1, 1})).entries == std::vector<bigint>{1, 0, 0, 0});
    CHECK_THROWS_AS(delta_via_ascents(seq({2, 3})), std::domain_error);

    for (int n = 1; n <= 6; ++n)
        CHECK(delta_via_ascents(seq::parse("lecture:" + std::to_string(n))).entries ==
              eulerian_delta(n));
}

TEST_CASE("the three delta methods agree") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const seq s = oracles::random_seq(rng, 6, 6, 10'000);
        const delta_vector par = delta_via_parallelepiped(s);
        const delta_vector des = delta_via_descents(s);
        CHECK(par == des);
        if (s[0] == 1)
            CHECK(par == delta_via_ascents(s));

        bigint sum = 0;
        for (const bigint& e : par.entries)
            sum += e;
        CHECK(sum == s.product());
        CHECK(par.entries[0] == 1);
        CHECK(par.entries.size() == static_cast<std::size_t>(s.size()) + 1);
    }
}

TEST_CASE("delta is invariant under reversal") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const seq s = oracles::random_seq(rng, 6, 6, 5000);
        CHECK(delta_via_parallelepiped(s) == delta_via_parallelepiped(s.reversed()));
    }
}

TEST_CASE("direct dilation counting") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const seq s = oracles::random_seq(rng, 5, 6, 1000);
        CHECK(ehrhart_direct(s, 0).count == 1);
    }
    CHECK(ehrhart_direct(seq({2, 3}), 1).count == 7);

    // anti-lecture-hall dilations count like the unit cube
    for (int n = 1; n <= 6; ++n) {
        const seq s = seq::parse("anti:" + std::to_string(n));
        for (i64 t = 0; t <= 4; ++t)
            CHECK(ehrhart_direct(s, t).count ==
                  boost::multiprecision::pow(bigint(t + 1), static_cast<unsigned>(n)));
    }

    CHECK_THROWS_AS(ehrhart_direct(seq({2, 3}), -1), std::invalid_argument);
    run_options opt;
    opt.max_points = 10;
    CHECK_THROWS_AS(ehrhart_direct(seq({9, 9, 9}), 3, opt), cap_exceeded);
}

TEST_CASE("dilation point lists") {
    const auto pts = dilation_points(seq({2, 3}), 1);
    REQUIRE(pts.size() == 7);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        CHECK(pts[i] < pts[i + 1]);
    for (const auto& p : pts) {
        CHECK(p[0] >= 0);
        CHECK(ratio_cmp(p[0], 2, p[1], 3) <= 0);
        CHECK(p[1] <= 3);
    }
}

TEST_CASE("Ehrhart values from the delta-vector") {
    const delta_vector d{seq({2, 3}), {1, 4, 1}};
    CHECK(ehrhart_from_delta(d, 1).count == 7);
    CHECK(ehrhart_from_delta(d, 0).count == 1);

    delta_vector cube3{seq({3, 2, 1}), oracles::eulerian_row_bruteforce(3)};
    cube3.entries.push_back(0);
    CHECK(ehrhart_from_delta(cube3, 2).count == 27);
}

TEST_CASE("direct and delta-derived Ehrhart values agree") {
    std::mt19937 rng(44);
    for (int trial = 0; trial < 15; ++trial) {
        const seq s = oracles::random_seq(rng, 5, 6, 1000);
        const delta_vector d = delta_via_parallelepiped(s);
        for (i64 t = 0; t <= 4; ++t)
            CHECK(ehrhart_from_delta(d, t) == ehrhart_direct(s, t));
    }
}

TEST_CASE("series identity") {
    CHECK(series_check(seq({2, 3}), 6));
    CHECK(series_check(seq({1}), 3));
    CHECK_THROWS_AS(series_check(seq({2, 3}), 2), std::invalid_argument);

    // negative control: a corrupted delta-vector must fail
    delta_vector bad = delta_via_parallelepiped(seq({2, 3}));
    bad.entries[1] += 1;
    CHECK_FALSE(series_check_against(seq({2, 3}), bad, 6));

    std::mt19937 rng(45);
    for (int trial = 0; trial < 10; ++trial) {
        const seq s = oracles::random_seq(rng, 4, 5, 500);
        CHECK(series_check(s, s.size() + 4));
    }
}
