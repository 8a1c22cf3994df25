#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lhall/detail/parallel.hpp"
#include "lhall/parbox.hpp"
#include "lhall/seq.hpp"
#include "lhall/stats.hpp"

namespace lhall {

/// One application of the level-preserving bijection from the parallelepiped
/// of s* to the parallelepiped of u* (u the reversal of s), with every
/// intermediate of the composite rem_inv . pad . reverse . phi . drop . rem
/// kept for inspection.
struct bijection_trace {
    lattice_point source;
    word after_rem;     // remainder word in the zero-padded word set of s
    word after_drop;    // last coordinate dropped
    word after_phi;     // digitwise complement over s
    word after_reverse; // word over the reversal of s
    lattice_point target;
    i64 source_level = 0;
    i64 target_level = 0;
};

/// The composite bijection from parallelepiped points of s* to parallelepiped
/// points of u*. Preserves the grading level; a violation would falsify the
/// reversal transfer identity, so it is checked here.
inline bijection_trace gamma(const seq& s, const lattice_point& x) {
    const seq sstar = s.starred();
    const seq ustar = s.reversed().starred();
    require_member(sstar, x);

    const word after_rem = rem(sstar, x);
    const word after_drop = after_rem.dropped_last();
    const word after_phi = phi(s, after_drop);
    const word after_reverse = after_phi.reversed();
    const lattice_point target = rem_inv(ustar, after_reverse.padded_zero());
    if (x.back() != target.back())
        throw std::logic_error("gamma failed to preserve the grading level at point " +
                               join_csv(x));
    return bijection_trace{x,           after_rem, after_drop, after_phi,
                           after_reverse, target,    x.back(),   target.back()};
}

namespace detail {

// Allocation-free kernels behind the identity checks; the batch verifiers run
// them over millions of words with caller-owned scratch buffers.

// Target of the gamma composite for a parallelepiped point x of s*, written
// into out. Caller guarantees membership; scratch holds n+1 entries.
inline void gamma_target_into(const seq& s, const seq& ustar, std::span<const i64> x,
                              std::span<i64> scratch, std::span<i64> out) {
    const std::size_t n = x.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        const i64 digit = x[j] % s[j];
        scratch[i] = digit == 0 ? 0 : s[j] - digit;
    }
    scratch[n] = 0;
    rem_inv_into(ustar, scratch, out);
}

// z_i = (0 - r_i) mod radix_i
inline void phi_zero_into(std::span<const i64> radices, std::span<const i64> r,
                          std::span<i64> out) {
    for (std::size_t i = 0; i < r.size(); ++i)
        out[i] = r[i] == 0 ? 0 : radices[i] - r[i];
}

struct rev_scratch {
    std::vector<i64> padded_s, padded_u;

    explicit rev_scratch(i64 n)
        : padded_s(static_cast<std::size_t>(n) + 1, 0),
          padded_u(static_cast<std::size_t>(n) + 1, 0) {}
};

inline bool rev_identity_kernel(const seq& sstar, const seq& ustar, std::span<const i64> r,
                                rev_scratch& scratch) {
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i)
        scratch.padded_s[i] = r[i];
    scratch.padded_s[n] = 0;
    const i64 lhs = weighted_des_count(sstar.entries(), scratch.padded_s);
    for (std::size_t i = 0; i < n; ++i) {
        const i64 digit = r[n - 1 - i];
        scratch.padded_u[i] = digit == 0 ? 0 : sstar[n - 1 - i] - digit;
    }
    scratch.padded_u[n] = 0;
    return lhs == weighted_des_count(ustar.entries(), scratch.padded_u);
}

struct tilde_scratch {
    std::vector<i64> wrapped, complement, reversed;

    explicit tilde_scratch(i64 n)
        : wrapped(static_cast<std::size_t>(n) + 2, 0),
          complement(static_cast<std::size_t>(n) + 2, 0),
          reversed(static_cast<std::size_t>(n) + 2, 0) {}
};

inline bool tilde_identity_kernel(const seq& st, const seq& ut, std::span<const i64> wrapped,
                                  tilde_scratch& scratch) {
    const std::size_t m = wrapped.size();
    phi_zero_into(st.entries(), wrapped, scratch.complement);
    for (std::size_t i = 0; i < m; ++i)
        scratch.reversed[i] = scratch.complement[m - 1 - i];
    const i64 lhs = weighted_des_count(st.entries(), wrapped);
    const i64 mid = weighted_asc_count(st.entries(), scratch.complement);
    const i64 rhs = weighted_des_count(ut.entries(), scratch.reversed);
    return lhs == mid && mid == rhs;
}

struct s1_scratch {
    std::vector<i64> padded_r, padded_z;

    explicit s1_scratch(i64 n)
        : padded_r(static_cast<std::size_t>(n) + 1, 0),
          padded_z(static_cast<std::size_t>(n) + 1, 0) {}
};

inline bool s1_identity_kernel(const seq& s, const seq& sstar, std::span<const i64> r,
                               s1_scratch& scratch) {
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i)
        scratch.padded_r[i] = r[i];
    scratch.padded_r[n] = 0;
    phi_zero_into(s.entries(), r, scratch.padded_z);
    scratch.padded_z[n] = 0;
    const i64 des = weighted_des_count(sstar.entries(), scratch.padded_r);
    const i64 asc_star = weighted_asc_count(sstar.entries(), scratch.padded_z);
    const i64 asc_plain =
        weighted_asc_count(s.entries(), std::span<const i64>(scratch.padded_z.data(), n));
    return des == asc_star && asc_star == asc_plain;
}

// Collects the words of s failing the per-chunk predicate from make_pred,
// partitioned on the first digit and merged in digit order, then sorted; the
// result is schedule-independent.
template <class PredFactory>
std::vector<word> failing_words(const seq& s, const run_options& opt, PredFactory&& make_pred) {
    guard_cap(s.product(), opt, "identity verification");
    const auto ranges = split_range(s[0], opt.parallel);
    auto chunk_fails = run_chunks<std::vector<std::vector<i64>>>(
        static_cast<i64>(ranges.size()), opt.parallel, [&](i64 chunk) {
            auto pred = make_pred();
            std::vector<std::vector<i64>> local;
            std::vector<i64> digits(static_cast<std::size_t>(s.size()), 0);
            for (i64 first = ranges[static_cast<std::size_t>(chunk)].first;
                 first < ranges[static_cast<std::size_t>(chunk)].second; ++first) {
                digits[0] = first;
                for_each_suffix(s, digits, 1, [&](std::span<const i64> w) {
                    if (!pred(w))
                        local.emplace_back(w.begin(), w.end());
                });
            }
            return local;
        });
    std::vector<word> out;
    for (auto& chunk : chunk_fails)
        for (auto& digits : chunk)
            out.emplace_back(s, std::move(digits));
    std::sort(out.begin(), out.end(),
              [](const word& a, const word& b) { return a.digits() < b.digits(); });
    return out;
}

} // namespace detail

/// des over s* of (r,0) equals des over u* of (reverse(phi(r)),0). True for
/// every word r; the batch variant returns the sorted counterexample list,
/// empty on success.
inline bool check_rev_identity(const seq& s, const word& r) {
    if (r.radices() != s)
        throw std::invalid_argument("word radices do not match sequence");
    detail::rev_scratch scratch(s.size());
    return detail::rev_identity_kernel(s.starred(), s.reversed().starred(), r.digits(),
                                       scratch);
}

/// des over s~ of r equals asc over s~ of phi(r) equals des over u~ of
/// reverse(phi(r)), for padded words r in <0> x Psi x <0> over s~.
inline bool check_tilde_identity(const seq& s, const word& r) {
    const seq st = s.tilde();
    if (r.radices() != st)
        throw std::invalid_argument("word radices do not match the tilde sequence");
    detail::tilde_scratch scratch(s.size());
    return detail::tilde_identity_kernel(st, st.reversed(), r.digits(), scratch);
}

/// des over s* of (r,0) equals asc over s* of (phi(r),0) equals asc over s of
/// phi(r); requires s_1 = 1. Both ascent forms are evaluated.
inline bool check_s1_identity(const seq& s, const word& r) {
    if (s[0] != 1)
        throw std::domain_error("identity requires s_1 = 1, got s_1 = " + std::to_string(s[0]));
    if (r.radices() != s)
        throw std::invalid_argument("word radices do not match sequence");
    detail::s1_scratch scratch(s.size());
    return detail::s1_identity_kernel(s, s.starred(), r.digits(), scratch);
}

inline std::vector<word> rev_identity_counterexamples(const seq& s, const run_options& opt = {}) {
    const seq sstar = s.starred();
    const seq ustar = s.reversed().starred();
    return detail::failing_words(s, opt, [&] {
        return [&, scratch = detail::rev_scratch(s.size())](std::span<const i64> r) mutable {
            return detail::rev_identity_kernel(sstar, ustar, r, scratch);
        };
    });
}

/// Counterexamples to the tilde identity over all padded words of s~,
/// reported by their core digits over s.
inline std::vector<word> tilde_identity_counterexamples(const seq& s,
                                                        const run_options& opt = {}) {
    const seq st = s.tilde();
    const seq ut = st.reversed();
    const std::size_t n = static_cast<std::size_t>(s.size());
    return detail::failing_words(s, opt, [&] {
        return [&, scratch = detail::tilde_scratch(s.size()),
                wrapped = std::vector<i64>(n + 2, 0)](std::span<const i64> r) mutable {
            for (std::size_t i = 0; i < n; ++i)
                wrapped[i + 1] = r[i];
            return detail::tilde_identity_kernel(st, ut, wrapped, scratch);
        };
    });
}

inline std::vector<word> s1_identity_counterexamples(const seq& s, const run_options& opt = {}) {
    if (s[0] != 1)
        throw std::domain_error("identity requires s_1 = 1, got s_1 = " + std::to_string(s[0]));
    const seq sstar = s.starred();
    return detail::failing_words(s, opt, [&] {
        return [&, scratch = detail::s1_scratch(s.size())](std::span<const i64> r) mutable {
            return detail::s1_identity_kernel(s, sstar, r, scratch);
        };
    });
}

/// The unimodular reversal map on the t-th dilation: x -> reverse(t*s - x).
/// A bijection between the lattice points of the dilations of s and of its
/// reversal; applying the map for u after the map for s gives back x.
inline lattice_point reversal_point_map(const seq& s, i64 t, const lattice_point& x) {
    detail::check_point_length(s, x);
    if (t < 0)
        throw std::invalid_argument("dilation factor must be nonnegative");
    const i64 n = s.size();
    // membership in t * P_s: 0 <= x_1/s_1 <= ... <= x_n/s_n <= t
    if (x[0] < 0)
        throw std::domain_error("point not in dilation: x1 < 0");
    for (i64 i = 0; i + 1 < n; ++i)
        if (ratio_cmp(x[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i)],
                      x[static_cast<std::size_t>(i + 1)], s[static_cast<std::size_t>(i + 1)]) > 0)
            throw std::domain_error("point not in dilation: chain condition failed at i=" +
                                    std::to_string(i + 1));
    if (static_cast<detail::int128>(x[static_cast<std::size_t>(n - 1)]) >
        static_cast<detail::int128>(t) * s[static_cast<std::size_t>(n - 1)])
        throw std::domain_error("point not in dilation: x_n/s_n > t");

    lattice_point y(static_cast<std::size_t>(n));
    for (i64 i = 0; i < n; ++i) {
        const std::size_t j = static_cast<std::size_t>(n - 1 - i);
        y[static_cast<std::size_t>(i)] =
            detail::checked_i64(static_cast<detail::int128>(t) * s[j] - x[j], "reversal_point_map");
    }
    return y;
}

/// One application of the inversion-sequence bijection for s = (1, 2, ..., n):
/// reverse . drop-last . rem_bar over s*, with the level identities recorded.
struct lecture_inversion_trace {
    lattice_point source;
    word after_rem_bar;
    word after_drop;
    word inversion_seq; // the image, a word over (n, n-1, ..., 1)
    i64 level = 0;      // last coordinate of the source
    i64 asc_value = 0;  // regular ascents of after_drop; equals level
    i64 des_value = 0;  // regular descents of the image; equals level
};

inline lecture_inversion_trace lecture_inversion_map(i64 n, const lattice_point& x) {
    if (n < 1)
        throw std::invalid_argument("lecture_inversion_map: n must be >= 1");
    std::vector<i64> entries(static_cast<std::size_t>(n));
    for (i64 i = 0; i < n; ++i)
        entries[static_cast<std::size_t>(i)] = i + 1;
    const seq s{std::move(entries)};
    const seq sstar = s.starred();
    require_member(sstar, x);

    const word after_rem_bar = rem_bar(sstar, x);
    const word after_drop = after_rem_bar.dropped_last();
    const word image = after_drop.reversed();
    return lecture_inversion_trace{x,        after_rem_bar,                 after_drop, image,
                        x.back(), asc_count(after_drop.digits()), des_count(image.digits())};
}

} // namespace lhall
