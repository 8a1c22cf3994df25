#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "lhall/stats.hpp"
#include "oracles.hpp"

using namespace lhall;

namespace {

std::vector<i64> rand_digits(std::mt19937& rng, const seq& s) {
    std::vector<i64> r(static_cast<std::size_t>(s.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = std::uniform_int_distribution<i64>(0, s[i] - 1)(rng);
    return r;
}

} // namespace

TEST_CASE("regular descent and ascent sets") {
    CHECK(des_set(std::vector<i64>{2, 1, 0}) == std::vector<i64>{1, 2});
    CHECK(des_set(std::vector<i64>{0, 0, 0}).empty());
    CHECK(des_set(std::vector<i64>{0, 2, 1}) == std::vector<i64>{2});
    CHECK(asc_set(std::vector<i64>{0, 2, 1}) == std::vector<i64>{1});
    CHECK_THROWS_AS(des_set(std::vector<i64>{}), std::invalid_argument);
}

TEST_CASE("weighted descent set by cross-multiplication") {
    CHECK(s_des_set(seq({2, 3, 1}), std::vector<i64>{1, 1, 0}) == std::vector<i64>{1, 2});
    CHECK_THROWS_AS(s_des_set(seq({2, 3}), std::vector<i64>{1}), std::invalid_argument);

    // all-ones radices reduce to the regular statistic
    std::mt19937 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 7)(rng);
        const seq ones(std::vector<i64>(static_cast<std::size_t>(n), 1));
        std::vector<i64> r(static_cast<std::size_t>(n));
        for (auto& v : r)
            v = std::uniform_int_distribution<i64>(0, 9)(rng);
        CHECK(s_des_set(ones, r) == des_set(r));
        CHECK(s_asc_set(ones, r) == asc_set(r));
    }
}

TEST_CASE("consecutive radices compare like plain values") {
    // for radices s and s' = s - 1: r/s > r'/s' iff r > r', checked exhaustively
    for (i64 s = 2; s <= 12; ++s) {
        const i64 sp = s - 1;
        for (i64 r = 0; r < s; ++r)
            for (i64 rp = 0; rp < sp; ++rp)
                CHECK((ratio_cmp(r, s, rp, sp) > 0) == (r > rp));
    }
}

TEST_CASE("weighted equals regular statistic on anti radices") {
    for (int n = 1; n <= 6; ++n) {
        const seq s = seq::parse("anti:" + std::to_string(n));
        for_each_word(s, [&](std::span<const i64> r) {
            CHECK(s_des_set(s, r) == des_set(r));
        });
    }
}

TEST_CASE("descents before an index") {
    const seq s({2, 3});
    CHECK(s_des_before(s, std::vector<i64>{1, 1}, 1) == 0);
    CHECK(s_des_before(s, std::vector<i64>{1, 1}, 2) == 1);
    CHECK_THROWS_AS(s_des_before(s, std::vector<i64>{1, 1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(s_des_before(s, std::vector<i64>{1, 1}, 3), std::invalid_argument);

    std::mt19937 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const seq t = oracles::random_seq(rng, 7, 9);
        const auto r = rand_digits(rng, t);
        CHECK(s_des_before(t, r, 1) == 0);
        CHECK(s_des_before(t, r, t.size()) == s_des_count(t, r));
    }
}

TEST_CASE("descents, ascents and ties partition the index range") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const seq s = oracles::random_seq(rng, 7, 9);
        const auto r = rand_digits(rng, s);
        const stat_report rep = s_stats(s, r);
        i64 ties = 0;
        for (i64 i = 0; i + 1 < s.size(); ++i)
            if (ratio_cmp(r[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i)],
                          r[static_cast<std::size_t>(i + 1)],
                          s[static_cast<std::size_t>(i + 1)]) == 0)
                ++ties;
        CHECK(rep.des + rep.asc + ties == s.size() - 1);
        std::vector<i64> overlap;
        std::set_intersection(rep.des_set.begin(), rep.des_set.end(), rep.asc_set.begin(),
                              rep.asc_set.end(), std::back_inserter(overlap));
        CHECK(overlap.empty());
    }
}

TEST_CASE("inversion sequence of a permutation") {
    CHECK(inversion_sequence(permutation::identity(4)).digits() ==
          std::vector<i64>{0, 0, 0, 0});
    CHECK(inversion_sequence(permutation({3, 2, 1})).digits() == std::vector<i64>{2, 1, 0});
    CHECK(inversion_sequence(permutation({3, 2, 1})).radices() == seq({3, 2, 1}));

    // injective over all of S_4
    std::vector<i64> p{1, 2, 3, 4};
    std::vector<std::vector<i64>> images;
    do {
        images.push_back(inversion_sequence(permutation(p)).digits());
    } while (std::next_permutation(p.begin(), p.end()));
    std::sort(images.begin(), images.end());
    CHECK(images.size() == 24);
    CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
}

TEST_CASE("permutation from inversion sequence") {
    const seq radices({3, 2, 1});
    CHECK(perm_from_inversion_sequence(word(radices, {0, 0, 0})) ==
          permutation::identity(3));
    CHECK(perm_from_inversion_sequence(word(radices, {2, 1, 0})) == permutation({3, 2, 1}));
    CHECK_THROWS_AS(perm_from_inversion_sequence(word(seq({2, 2}), {1, 1})),
                    std::invalid_argument);

    // round trip over all of S_n up to n = 7
    for (i64 n = 1; n <= 7; ++n) {
        std::vector<i64> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 1);
        do {
            const permutation perm(p);
            if (perm_from_inversion_sequence(inversion_sequence(perm)) != perm)
                FAIL("round trip broke at ", doctest::toString(n));
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("permutation validation") {
    CHECK_THROWS_AS(permutation({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(permutation({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(permutation({2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(permutation(std::vector<i64>{}), std::invalid_argument);
}

TEST_CASE("eulerian numbers") {
    for (i64 n = 1; n <= 10; ++n)
        CHECK(eulerian(n, 1) == 1);
    CHECK(eulerian(3, 2) == 4);
    CHECK_THROWS_AS(eulerian(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(eulerian(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(eulerian(0, 1), std::invalid_argument);

    // row sums are factorials
    for (i64 n = 1; n <= 10; ++n) {
        bigint sum = 0;
        for (i64 i = 1; i <= n; ++i)
            sum += eulerian(n, i);
        bigint factorial = 1;
        for (i64 k = 2; k <= n; ++k)
            factorial *= k;
        CHECK(sum == factorial);
    }

    // recurrence agrees with the brute-force definition
    for (int n = 1; n <= 8; ++n)
        for (int i = 1; i <= n; ++i)
            CHECK(eulerian(n, i) == oracles::eulerian_bruteforce(n, i));
}

TEST_CASE("inversion sequences with i descents are counted by Eulerian numbers") {
    for (int n = 1; n <= 7; ++n) {
        const seq s = seq::parse("anti:" + std::to_string(n));
        std::map<i64, i64> by_descents;
        for_each_word(s, [&](std::span<const i64> r) { ++by_descents[des_count(r)]; });
        for (int i = 0; i < n; ++i)
            CHECK(bigint(by_descents[i]) == eulerian(n, i + 1));
    }
}

TEST_CASE("statistic distributions") {
    CHECK(stat_distribution(seq({2, 3}), stat_mode::des_s, true) ==
          std::vector<bigint>{1, 4, 1});
    CHECK(stat_distribution(seq({2, 3, 1}), stat_mode::des_s, true) ==
          std::vector<bigint>{1, 4, 1, 0});
    CHECK(stat_distribution(seq({1, 1, 1}), stat_mode::des_s, false) ==
          std::vector<bigint>{1, 0, 0, 0});

    // anti radices with the regular descent statistic give the Eulerian row
    for (int n = 1; n <= 6; ++n) {
        const seq s = seq::parse("anti:" + std::to_string(n));
        const auto dist = stat_distribution(s, stat_mode::des, false);
        for (int i = 0; i < n; ++i)
            CHECK(dist[static_cast<std::size_t>(i)] == eulerian(n, i + 1));
        CHECK(dist[static_cast<std::size_t>(n)] == 0);
    }

    std::mt19937 rng(24);
    for (int trial = 0; trial < 15; ++trial) {
        const seq s = oracles::random_seq(rng, 6, 6, 5000);
        for (const bool padded : {false, true}) {
            const auto dist = stat_distribution(s, stat_mode::des_s, padded);
            bigint sum = 0;
            for (const auto& c : dist)
                sum += c;
            CHECK(sum == s.product());
        }
    }
}

TEST_CASE("distribution is independent of parallel execution") {
    std::mt19937 rng(25);
    for (int trial = 0; trial < 10; ++trial) {
        const seq s = oracles::random_seq(rng, 6, 6, 8000);
        run_options serial;
        run_options parallel;
        parallel.parallel = true;
        for (const auto mode :
             {stat_mode::des_s, stat_mode::asc_s, stat_mode::des, stat_mode::asc})
            CHECK(stat_distribution(s, mode, true, serial) ==
                  stat_distribution(s, mode, true, parallel));
    }
}

TEST_CASE("distribution respects the cap") {
    run_options opt;
    opt.max_points = 5;
    CHECK_THROWS_AS(stat_distribution(seq({2, 3}), stat_mode::des_s, false, opt), cap_exceeded);
}
