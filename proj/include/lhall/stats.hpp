#pragma once

#include <cassert>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "lhall/detail/parallel.hpp"
#include "lhall/seq.hpp"

namespace lhall {

namespace detail {

inline void check_same_length(const seq& s, std::span<const i64> r) {
    if (static_cast<i64>(r.size()) != s.size())
        throw std::invalid_argument("length mismatch: " + std::to_string(r.size()) +
                                    " entries for sequence of length " +
                                    std::to_string(s.size()));
}

// Weighted descent/ascent counts on raw spans; the hot loops below run these
// millions of times, so no seq/word objects are built here.
inline i64 weighted_des_count(std::span<const i64> radices, std::span<const i64> r) {
    i64 count = 0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (ratio_cmp(r[i], radices[i], r[i + 1], radices[i + 1]) > 0)
            ++count;
    return count;
}

inline i64 weighted_asc_count(std::span<const i64> radices, std::span<const i64> r) {
    i64 count = 0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (ratio_cmp(r[i], radices[i], r[i + 1], radices[i + 1]) < 0)
            ++count;
    return count;
}

} // namespace detail

/// Descent set {i | r_i > r_{i+1}} of a list, indices 1-based as in the
/// literature (so valid indices are 1..n-1).
inline std::vector<i64> des_set(std::span<const i64> r) {
    if (r.empty())
        throw std::invalid_argument("descent set of an empty list");
    std::vector<i64> out;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (r[i] > r[i + 1])
            out.push_back(static_cast<i64>(i) + 1);
    return out;
}

/// Ascent set {i | r_i < r_{i+1}}, 1-based.
inline std::vector<i64> asc_set(std::span<const i64> r) {
    if (r.empty())
        throw std::invalid_argument("ascent set of an empty list");
    std::vector<i64> out;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (r[i] < r[i + 1])
            out.push_back(static_cast<i64>(i) + 1);
    return out;
}

inline i64 des_count(std::span<const i64> r) { return static_cast<i64>(des_set(r).size()); }
inline i64 asc_count(std::span<const i64> r) { return static_cast<i64>(asc_set(r).size()); }

/// s-descent set: indices i with r_i/s_i > r_{i+1}/s_{i+1}, decided by exact
/// cross-multiplication. 1-based indices.
inline std::vector<i64> s_des_set(const seq& s, std::span<const i64> r) {
    detail::check_same_length(s, r);
    std::vector<i64> out;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (ratio_cmp(r[i], s[i], r[i + 1], s[i + 1]) > 0)
            out.push_back(static_cast<i64>(i) + 1);
    return out;
}

/// s-ascent set: indices i with r_i/s_i < r_{i+1}/s_{i+1}. Ties are neither
/// descents nor ascents.
inline std::vector<i64> s_asc_set(const seq& s, std::span<const i64> r) {
    detail::check_same_length(s, r);
    std::vector<i64> out;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (ratio_cmp(r[i], s[i], r[i + 1], s[i + 1]) < 0)
            out.push_back(static_cast<i64>(i) + 1);
    return out;
}

inline i64 s_des_count(const seq& s, std::span<const i64> r) {
    detail::check_same_length(s, r);
    return detail::weighted_des_count(s.entries(), r);
}

inline i64 s_asc_count(const seq& s, std::span<const i64> r) {
    detail::check_same_length(s, r);
    return detail::weighted_asc_count(s.entries(), r);
}

/// Number of s-descents of r at indices strictly smaller than i, for
/// 1 <= i <= n. At i = n this equals the full s-descent count.
inline i64 s_des_before(const seq& s, std::span<const i64> r, i64 i) {
    detail::check_same_length(s, r);
    if (i < 1 || i > s.size())
        throw std::invalid_argument("index " + std::to_string(i) + " out of range 1.." +
                                    std::to_string(s.size()));
    i64 count = 0;
    for (i64 j = 1; j < i; ++j)
        if (ratio_cmp(r[static_cast<std::size_t>(j - 1)], s[static_cast<std::size_t>(j - 1)],
                      r[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(j)]) > 0)
            ++count;
    return count;
}

/// Both weighted statistics of one list in a single pass.
struct stat_report {
    std::vector<i64> des_set;
    std::vector<i64> asc_set;
    i64 des = 0;
    i64 asc = 0;
};

inline stat_report s_stats(const seq& s, std::span<const i64> r) {
    stat_report rep;
    rep.des_set = s_des_set(s, r);
    rep.asc_set = s_asc_set(s, r);
    rep.des = static_cast<i64>(rep.des_set.size());
    rep.asc = static_cast<i64>(rep.asc_set.size());
    return rep;
}

/// A permutation of {1, ..., n} in one-line notation.
class permutation {
public:
    explicit permutation(std::vector<i64> one_line) : values_(std::move(one_line)) {
        const i64 n = static_cast<i64>(values_.size());
        if (n == 0)
            throw std::invalid_argument("empty permutation");
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (i64 v : values_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
                throw std::invalid_argument("not a permutation of 1.." + std::to_string(n));
            seen[static_cast<std::size_t>(v - 1)] = true;
        }
    }

    static permutation identity(i64 n) {
        std::vector<i64> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        return permutation(std::move(v));
    }

    i64 size() const { return static_cast<i64>(values_.size()); }
    const std::vector<i64>& one_line() const { return values_; }
    i64 operator[](std::size_t i) const { return values_[i]; }

    bool operator==(const permutation&) const = default;

private:
    std::vector<i64> values_;
};

/// Inversion sequence I(pi) = (a_1, ..., a_n) where a_i counts inversions
/// (pi_j, pi_k) with pi_k = i. The result is a word over radices
/// (n, n-1, ..., 1), and the map is a bijection onto that word set.
inline word inversion_sequence(const permutation& p) {
    const i64 n = p.size();
    std::vector<i64> a(static_cast<std::size_t>(n), 0);
    for (i64 pos = 0; pos < n; ++pos) {
        const i64 value = p[static_cast<std::size_t>(pos)];
        for (i64 before = 0; before < pos; ++before)
            if (p[static_cast<std::size_t>(before)] > value)
                ++a[static_cast<std::size_t>(value - 1)];
    }
    std::vector<i64> radices(static_cast<std::size_t>(n));
    for (i64 i = 0; i < n; ++i)
        radices[static_cast<std::size_t>(i)] = n - i;
    return word(seq(std::move(radices)), std::move(a));
}

/// Inverse of inversion_sequence. Rebuilds the one-line form by inserting
/// values n, n-1, ..., 1; when value i goes in, a_i existing entries (all
/// larger than i) must precede it.
inline permutation perm_from_inversion_sequence(const word& w) {
    const i64 n = w.size();
    for (i64 i = 0; i < n; ++i)
        if (w.radices()[static_cast<std::size_t>(i)] != n - i)
            throw std::invalid_argument("word radices are not (n, n-1, ..., 1)");
    std::vector<i64> line;
    line.reserve(static_cast<std::size_t>(n));
    for (i64 value = n; value >= 1; --value) {
        const i64 offset = w.digits()[static_cast<std::size_t>(value - 1)];
        line.insert(line.begin() + offset, value);
    }
    return permutation(std::move(line));
}

/// Eulerian number A(n, i): permutations of n with exactly i-1 descents,
/// computed by the standard row recurrence.
inline bigint eulerian(i64 n, i64 i) {
    if (n < 1)
        throw std::invalid_argument("eulerian: n must be >= 1");
    if (i < 1 || i > n)
        throw std::invalid_argument("eulerian: index " + std::to_string(i) +
                                    " out of range 1.." + std::to_string(n));
    // row[k] = #permutations of m with k descents
    std::vector<bigint> row{1};
    for (i64 m = 2; m <= n; ++m) {
        std::vector<bigint> next(static_cast<std::size_t>(m), 0);
        for (std::size_t k = 0; k < row.size(); ++k) {
            next[k] += bigint(static_cast<i64>(k) + 1) * row[k];
            next[k + 1] += bigint(m - static_cast<i64>(k) - 1) * row[k];
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(i - 1)];
}

enum class stat_mode { des_s, asc_s, des, asc };

/// Distribution of a statistic over the word set of s, optionally padded by a
/// final 0 digit (weighted statistics then run over s*). Entry i counts words
/// with statistic value i; the vector has length n+1 to match delta-vector
/// shape, and its entries sum to the product of s.
inline std::vector<bigint> stat_distribution(const seq& s, stat_mode mode, bool append_zero,
                                             const run_options& opt = {}) {
    detail::guard_cap(s.product(), opt, "statistic distribution");
    const i64 n = s.size();
    const seq stat_radices = append_zero ? s.starred() : s;
    const auto ranges = detail::split_range(s[0], opt.parallel);

    auto chunk_counts = detail::run_chunks<std::vector<bigint>>(
        static_cast<i64>(ranges.size()), opt.parallel, [&](i64 chunk) {
            std::vector<bigint> local(static_cast<std::size_t>(n) + 1, 0);
            std::vector<i64> digits(static_cast<std::size_t>(n) + (append_zero ? 1 : 0), 0);
            auto tally = [&](std::span<const i64> padded) {
                i64 value = 0;
                switch (mode) {
                case stat_mode::des_s:
                    value = detail::weighted_des_count(stat_radices.entries(), padded);
                    break;
                case stat_mode::asc_s:
                    value = detail::weighted_asc_count(stat_radices.entries(), padded);
                    break;
                case stat_mode::des:
                    value = des_count(padded);
                    break;
                case stat_mode::asc:
                    value = asc_count(padded);
                    break;
                }
                assert(value <= n);
                ++local[static_cast<std::size_t>(value)];
            };
            for (i64 first = ranges[static_cast<std::size_t>(chunk)].first;
                 first < ranges[static_cast<std::size_t>(chunk)].second; ++first) {
                digits[0] = first;
                detail::for_each_suffix(s, digits, 1,
                                        [&](std::span<const i64> padded) { tally(padded); });
            }
            return local;
        });

    std::vector<bigint> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& local : chunk_counts)
        for (std::size_t i = 0; i < counts.size(); ++i)
            counts[i] += local[i];
    return counts;
}

} // namespace lhall
