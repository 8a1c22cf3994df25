#pragma once

#include <cassert>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lhall/detail/parallel.hpp"
#include "lhall/seq.hpp"
#include "lhall/stats.hpp"

namespace lhall {

/// Lattice points of the half-open parallelepiped spanned by the non-origin
/// vertices of the lecture hall polytope of s, graded by last coordinate.
/// Points are stored in lexicographic order; level_counts[i] is the number of
/// points whose last coordinate equals i.
struct graded_points {
    seq s;
    std::vector<lattice_point> points;
    std::vector<i64> level_counts;

    i64 total() const { return static_cast<i64>(points.size()); }

    std::vector<lattice_point> at_level(i64 level) const {
        std::vector<lattice_point> out;
        for (const auto& p : points)
            if (p.back() == level)
                out.push_back(p);
        return out;
    }
};

namespace detail {

// 0 on membership; 1 when the x_1 range condition fails; i+1 when the band
// between coordinates i and i+1 fails. Conditions, denominators cleared:
//   0 <= x_1 < s_1
//   0 <= s_i * x_{i+1} - s_{i+1} * x_i < s_i * s_{i+1}
inline i64 first_violation(const seq& s, const lattice_point& x) {
    if (x[0] < 0 || x[0] >= s[0])
        return 1;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const int128 diff = static_cast<int128>(s[i]) * x[i + 1] -
                              static_cast<int128>(s[i + 1]) * x[i];
        if (diff < 0 || diff >= static_cast<int128>(s[i]) * s[i + 1])
            return static_cast<i64>(i) + 2;
    }
    return 0;
}

inline void check_point_length(const seq& s, const lattice_point& x) {
    if (static_cast<i64>(x.size()) != s.size())
        throw std::invalid_argument("length mismatch: point has " + std::to_string(x.size()) +
                                    " coordinates for sequence of length " +
                                    std::to_string(s.size()));
}

} // namespace detail

/// Whether x lies in the half-open parallelepiped of s: 0 <= x_1/s_1 < 1 and
/// 0 <= x_{i+1}/s_{i+1} - x_i/s_i < 1 for all i, checked with cleared
/// denominators so no barycentric coefficients ever materialize.
inline bool par_contains(const seq& s, const lattice_point& x) {
    detail::check_point_length(s, x);
    return detail::first_violation(s, x) == 0;
}

/// Throws std::domain_error naming the first failed inequality when x is not
/// a parallelepiped point.
inline void require_member(const seq& s, const lattice_point& x) {
    detail::check_point_length(s, x);
    const i64 v = detail::first_violation(s, x);
    if (v == 1)
        throw std::domain_error("point " + join_csv(x) +
                                " not in parallelepiped: x1/s1 outside [0,1)");
    if (v > 1)
        throw std::domain_error("point " + join_csv(x) +
                                " not in parallelepiped: band condition failed at i=" +
                                std::to_string(v - 1));
}

/// Enumerates all lattice points of the parallelepiped, exactly prod(s_i) of
/// them, in lexicographic order. Each admissible prefix extends by exactly
/// s_{i+1} consecutive values of x_{i+1}, starting at ceil(s_{i+1}*x_i/s_i).
inline graded_points enumerate_par(const seq& s, const run_options& opt = {}) {
    detail::guard_cap(s.product(), opt, "parallelepiped enumeration");
    const i64 n = s.size();
    const i64 total = static_cast<i64>(s.product());
    const auto ranges = detail::split_range(s[0], opt.parallel);

    // each chunk appends coordinates to one flat buffer; points materialize
    // only after the merge, so workers never contend on the allocator
    auto chunk_coords = detail::run_chunks<std::vector<i64>>(
        static_cast<i64>(ranges.size()), opt.parallel, [&](i64 chunk) {
            const auto [lo, hi] = ranges[static_cast<std::size_t>(chunk)];
            std::vector<i64> flat;
            flat.reserve(static_cast<std::size_t>(total / s[0] * (hi - lo) * n));
            lattice_point x(static_cast<std::size_t>(n));
            auto extend = [&](auto&& self, i64 pos) -> void {
                if (pos == n) {
                    flat.insert(flat.end(), x.begin(), x.end());
                    return;
                }
                const i64 low = detail::ceil_div_prod(s[static_cast<std::size_t>(pos)],
                                                      x[static_cast<std::size_t>(pos - 1)],
                                                      s[static_cast<std::size_t>(pos - 1)]);
                for (i64 v = low; v < low + s[static_cast<std::size_t>(pos)]; ++v) {
                    x[static_cast<std::size_t>(pos)] = v;
                    self(self, pos + 1);
                }
            };
            for (i64 first = lo; first < hi; ++first) {
                x[0] = first;
                extend(extend, 1);
            }
            return flat;
        });

    graded_points result{s, {}, {}};
    result.points.reserve(static_cast<std::size_t>(total));
    for (const auto& flat : chunk_coords)
        for (std::size_t at = 0; at < flat.size(); at += static_cast<std::size_t>(n))
            result.points.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(at),
                                       flat.begin() + static_cast<std::ptrdiff_t>(at) +
                                           static_cast<std::ptrdiff_t>(n));
    for (const auto& p : result.points) {
        const i64 level = p.back();
        assert(level >= 0);
        if (level >= static_cast<i64>(result.level_counts.size()))
            result.level_counts.resize(static_cast<std::size_t>(level) + 1, 0);
        ++result.level_counts[static_cast<std::size_t>(level)];
    }
    if (result.level_counts.empty())
        result.level_counts.push_back(0);
    return result;
}

/// Remainder word of a parallelepiped point: r_i = x_i mod s_i. A bijection
/// onto the word set of s.
inline word rem(const seq& s, const lattice_point& x) {
    require_member(s, x);
    std::vector<i64> digits(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        digits[i] = x[i] % s[i];
    return word(s, std::move(digits));
}

/// Quotient-remainder pair of a parallelepiped point: x_i = k_i*s_i + r_i.
/// The quotients satisfy k_1 = 0 with unit jumps exactly at s-descents of r.
struct kr_pair {
    std::vector<i64> quotients;
    word remainders;
};

inline kr_pair kr(const seq& s, const lattice_point& x) {
    require_member(s, x);
    std::vector<i64> q(x.size()), r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        q[i] = x[i] / s[i];
        r[i] = x[i] % s[i];
    }
    return kr_pair{std::move(q), word(s, std::move(r))};
}

namespace detail {

// x_i = des^{<i}(digits) * s_i + digits_i, written into out; no validation.
inline void rem_inv_into(const seq& s, std::span<const i64> digits, std::span<i64> out) {
    const i64 n = s.size();
    i64 descents_before = 0;
    for (i64 i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = checked_i64(
            static_cast<int128>(descents_before) * s[static_cast<std::size_t>(i)] +
                digits[static_cast<std::size_t>(i)],
            "rem_inv");
        if (i + 1 < n && ratio_cmp(digits[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i)],
                                   digits[static_cast<std::size_t>(i + 1)],
                                   s[static_cast<std::size_t>(i + 1)]) > 0)
            ++descents_before;
    }
}

} // namespace detail

/// Inverse of rem: places digit r_i at height des_s^{<i}(r), i.e.
/// x_i = des_s^{<i}(r) * s_i + r_i. When s_n = 1 the last coordinate equals
/// the s-descent count of r.
inline lattice_point rem_inv(const seq& s, const word& r) {
    if (r.radices() != s)
        throw std::invalid_argument("word radices do not match sequence");
    lattice_point x(static_cast<std::size_t>(s.size()));
    detail::rem_inv_into(s, r.digits(), x);
    assert(par_contains(s, x));
    return x;
}

namespace detail {

// Digitwise (a_i - b_i) mod s_i.
inline std::vector<i64> mod_diff(const seq& s, std::span<const i64> a, std::span<const i64> b) {
    std::vector<i64> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = ((a[i] - b[i]) % s[i] + s[i]) % s[i];
    return out;
}

} // namespace detail

/// The digitwise involution z_i = (q_i - r_i) mod s_i on the word set of s.
inline word phi_q(const seq& s, const word& q, const word& r) {
    if (q.radices() != s || r.radices() != s)
        throw std::invalid_argument("word radices do not match sequence");
    return word(s, detail::mod_diff(s, q.digits(), r.digits()));
}

/// phi_q at q = 0: z_i = s_i - r_i for r_i != 0, else 0.
inline word phi(const seq& s, const word& r) {
    return phi_q(s, word::zero(s), r);
}

/// The shifted remainder bijection y_i = (x_i + q_i) mod s_i; at q = 0 this
/// is rem itself.
inline word rem_q(const seq& s, const word& q, const lattice_point& x) {
    if (q.radices() != s)
        throw std::invalid_argument("word radices do not match sequence");
    require_member(s, x);
    std::vector<i64> digits(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        digits[i] = (x[i] % s[i] + q.digits()[i]) % s[i];
    return word(s, std::move(digits));
}

/// The complemented remainder bijection z_i = (q_i - x_i) mod s_i, equal to
/// phi_q composed with rem.
inline word rem_bar_q(const seq& s, const word& q, const lattice_point& x) {
    if (q.radices() != s)
        throw std::invalid_argument("word radices do not match sequence");
    require_member(s, x);
    return word(s, detail::mod_diff(s, q.digits(), x));
}

inline word rem_bar(const seq& s, const lattice_point& x) {
    return rem_bar_q(s, word::zero(s), x);
}

/// Inverse of rem_q, recovered through rem_inv on the unshifted digits.
inline lattice_point rem_q_inv(const seq& s, const word& q, const word& y) {
    if (q.radices() != s || y.radices() != s)
        throw std::invalid_argument("word radices do not match sequence");
    return rem_inv(s, word(s, detail::mod_diff(s, y.digits(), q.digits())));
}

/// Inverse of rem_bar_q: the involution phi_q undoes the complement, then
/// rem_inv lifts the word back into the parallelepiped.
inline lattice_point rem_bar_q_inv(const seq& s, const word& q, const word& z) {
    if (q.radices() != s || z.radices() != s)
        throw std::invalid_argument("word radices do not match sequence");
    return rem_inv(s, word(s, detail::mod_diff(s, q.digits(), z.digits())));
}

inline lattice_point rem_bar_inv(const seq& s, const word& z) {
    return rem_bar_q_inv(s, word::zero(s), z);
}

} // namespace lhall
