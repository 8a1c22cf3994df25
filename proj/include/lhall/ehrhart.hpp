#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "lhall/bigint.hpp"
#include "lhall/parbox.hpp"
#include "lhall/seq.hpp"
#include "lhall/stats.hpp"

namespace lhall {

/// The delta-vector (h*-vector) of the lecture hall polytope of s: always
/// length n+1 with explicit trailing zeros, entries summing to prod(s_i),
/// delta_0 = 1.
struct delta_vector {
    seq s;
    std::vector<bigint> entries;

    bool operator==(const delta_vector& other) const { return entries == other.entries; }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i)
                out += ',';
            out += entries[i].str();
        }
        return out;
    }
};

/// delta_i = number of parallelepiped points of s* at level i (grading by
/// last coordinate).
inline delta_vector delta_via_parallelepiped(const seq& s, const run_options& opt = {}) {
    const graded_points g = enumerate_par(s.starred(), opt);
    std::vector<bigint> entries(static_cast<std::size_t>(s.size()) + 1, 0);
    if (g.level_counts.size() > entries.size())
        throw std::logic_error("parallelepiped grading exceeds delta-vector length");
    for (std::size_t i = 0; i < g.level_counts.size(); ++i)
        entries[i] = g.level_counts[i];
    return delta_vector{s, std::move(entries)};
}

/// delta_i = number of zero-padded words with i s*-descents. When s_n = 1 the
/// unpadded s-descent distribution gives the same vector; debug builds verify
/// the shortcut whenever it applies.
inline delta_vector delta_via_descents(const seq& s, const run_options& opt = {}) {
    std::vector<bigint> entries = stat_distribution(s, stat_mode::des_s, true, opt);
#ifndef NDEBUG
    if (s[static_cast<std::size_t>(s.size() - 1)] == 1) {
        const std::vector<bigint> unpadded = stat_distribution(s, stat_mode::des_s, false, opt);
        assert(unpadded == entries);
    }
#endif
    return delta_vector{s, std::move(entries)};
}

/// delta_i = number of words with i s-ascents; only valid when s_1 = 1.
inline delta_vector delta_via_ascents(const seq& s, const run_options& opt = {}) {
    if (s[0] != 1)
        throw std::domain_error("ascent method requires s_1 = 1, got s_1 = " +
                                std::to_string(s[0]));
    return delta_vector{s, stat_distribution(s, stat_mode::asc_s, false, opt)};
}

/// Lattice-point count of the t-th dilation together with t.
struct ehrhart_value {
    i64 t = 0;
    bigint count;

    bool operator==(const ehrhart_value&) const = default;
};

namespace detail {

// Walks all integer points of t * P_s: 0 <= x_1/s_1 <= ... <= x_n/s_n <= t.
// Coordinates are fixed from x_n downward; given x_{i+1}, x_i ranges over
// [0, floor(s_i * x_{i+1} / s_{i+1})]. Every recursion step charges the cap.
template <class Emit>
void walk_dilation(const seq& s, i64 t, const run_options& opt, Emit&& emit) {
    if (t < 0)
        throw std::invalid_argument("dilation factor must be nonnegative");
    const i64 n = s.size();
    lattice_point x(static_cast<std::size_t>(n));
    i64 visited = 0;
    auto charge = [&] {
        if (++visited > opt.max_points)
            throw cap_exceeded("dilation enumeration exceeds cap of " +
                               std::to_string(opt.max_points) + " points");
    };
    auto descend = [&](auto&& self, i64 pos) -> void {
        // pos counts down; x[pos] already fixed by the caller
        charge();
        if (pos == 0) {
            emit(x);
            return;
        }
        const detail::int128 bound = static_cast<detail::int128>(s[static_cast<std::size_t>(pos - 1)]) *
                               x[static_cast<std::size_t>(pos)] /
                               s[static_cast<std::size_t>(pos)];
        for (i64 v = 0; v <= bound; ++v) {
            x[static_cast<std::size_t>(pos - 1)] = v;
            self(self, pos - 1);
        }
    };
    const detail::int128 top = static_cast<detail::int128>(t) * s[static_cast<std::size_t>(n - 1)];
    for (i64 v = 0; static_cast<detail::int128>(v) <= top; ++v) {
        x[static_cast<std::size_t>(n - 1)] = v;
        descend(descend, n - 1);
    }
}

} // namespace detail

/// Counts the lattice points of the t-th dilation by direct recursive
/// enumeration with exact integer bounds. This is the library's independent
/// oracle; it shares nothing with the delta-vector route.
inline ehrhart_value ehrhart_direct(const seq& s, i64 t, const run_options& opt = {}) {
    i64 count = 0;
    detail::walk_dilation(s, t, opt, [&](const lattice_point&) { ++count; });
    return ehrhart_value{t, bigint(count)};
}

/// Materializes the dilation's lattice points in lexicographic order.
inline std::vector<lattice_point> dilation_points(const seq& s, i64 t,
                                                  const run_options& opt = {}) {
    std::vector<lattice_point> out;
    detail::walk_dilation(s, t, opt, [&](const lattice_point& x) { out.push_back(x); });
    std::sort(out.begin(), out.end());
    return out;
}

/// Evaluates the Ehrhart polynomial from a delta-vector by the standard
/// transfer i(P,t) = sum_i delta_i * C(t+n-i, n).
inline ehrhart_value ehrhart_from_delta(const delta_vector& d, i64 t) {
    if (t < 0)
        throw std::invalid_argument("dilation factor must be nonnegative");
    const i64 n = static_cast<i64>(d.entries.size()) - 1;
    bigint count = 0;
    for (i64 i = 0; i <= n; ++i)
        count += d.entries[static_cast<std::size_t>(i)] * binomial(t + n - i, n);
    return ehrhart_value{t, std::move(count)};
}

/// Checks sum_{t<=T} i(P,t) z^t * (1-z)^{n+1} == delta(z) coefficientwise
/// modulo z^{T-n}, with the dilation counts taken from the direct oracle.
inline bool series_check_against(const seq& s, const delta_vector& d, i64 truncation,
                                 const run_options& opt = {}) {
    const i64 n = s.size();
    if (truncation < n + 1)
        throw std::invalid_argument("truncation order must be at least n+1");
    std::vector<bigint> counts(static_cast<std::size_t>(truncation) + 1);
    for (i64 t = 0; t <= truncation; ++t)
        counts[static_cast<std::size_t>(t)] = ehrhart_direct(s, t, opt).count;

    // (1-z)^{n+1} has coefficient (-1)^k C(n+1, k) at z^k
    for (i64 deg = 0; deg < truncation - n; ++deg) {
        bigint coeff = 0;
        for (i64 k = 0; k <= std::min(deg, n + 1); ++k) {
            const bigint term = binomial(n + 1, k) * counts[static_cast<std::size_t>(deg - k)];
            coeff += (k % 2 == 0) ? term : -term;
        }
        const bigint expected = deg <= n ? d.entries[static_cast<std::size_t>(deg)] : bigint(0);
        if (coeff != expected)
            return false;
    }
    return true;
}

inline bool series_check(const seq& s, i64 truncation, const run_options& opt = {}) {
    return series_check_against(s, delta_via_parallelepiped(s, opt), truncation, opt);
}

} // namespace lhall
