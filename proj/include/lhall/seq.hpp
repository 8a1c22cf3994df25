#pragma once

#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lhall/bigint.hpp"

namespace lhall {

using i64 = std::int64_t;

/// Thrown when an enumeration would visit more points than the configured cap.
class cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Options shared by every enumeration-backed operation.
struct run_options {
    i64 max_points = 10'000'000;
    bool parallel = false;
};

namespace detail {

// 128-bit intermediates keep every cross-multiplication of 64-bit values
// exact; anything that must come back to 64 bits goes through checked_i64.
__extension__ using int128 = __int128;

inline i64 checked_i64(int128 v, const char* what) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error(std::string("integer overflow in ") + what);
    return static_cast<i64>(v);
}

inline void guard_cap(const bigint& count, const run_options& opt, const char* what) {
    if (opt.max_points < 1)
        throw std::invalid_argument("max_points must be >= 1");
    if (count > bigint(opt.max_points))
        throw cap_exceeded(std::string(what) + " needs " + count.str() +
                           " points, cap is " + std::to_string(opt.max_points));
}

// ceil(a * b / c) for a, b >= 0, c > 0.
inline i64 ceil_div_prod(i64 a, i64 b, i64 c) {
    const int128 p = static_cast<int128>(a) * b;
    return checked_i64((p + c - 1) / c, "ceil_div_prod");
}

} // namespace detail

/// Compares a/b with c/d exactly via cross-multiplication (b, d > 0).
/// Returns <0, 0 or >0. Never touches floating point.
inline int ratio_cmp(i64 a, i64 b, i64 c, i64 d) {
    const detail::int128 lhs = static_cast<detail::int128>(a) * d;
    const detail::int128 rhs = static_cast<detail::int128>(c) * b;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// A nonempty sequence of positive integers. The literature writes s = (s_1,
/// ..., s_n) with 1-based indices; storage here is 0-based, and operator[]
/// takes 0-based positions. Immutable after construction.
class seq {
public:
    explicit seq(std::vector<i64> entries) : entries_(std::move(entries)) {
        if (entries_.empty())
            throw std::invalid_argument("empty sequence");
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] <= 0)
                throw std::invalid_argument("nonpositive entry at index " +
                                            std::to_string(i + 1));
    }

    seq(std::initializer_list<i64> entries) : seq(std::vector<i64>(entries)) {}

    /// Parses "2,3,1" or the presets "lecture:n" -> (1,...,n) and
    /// "anti:n" -> (n,...,1).
    static seq parse(std::string_view text);

    i64 size() const { return static_cast<i64>(entries_.size()); }
    const std::vector<i64>& entries() const { return entries_; }
    i64 operator[](std::size_t i) const { return entries_[i]; }

    seq reversed() const {
        return seq(std::vector<i64>(entries_.rbegin(), entries_.rend()));
    }

    /// s* = (s_1, ..., s_n, 1).
    seq starred() const {
        std::vector<i64> e = entries_;
        e.push_back(1);
        return seq(std::move(e));
    }

    /// s~ = (1, s_1, ..., s_n, 1).
    seq tilde() const {
        std::vector<i64> e;
        e.reserve(entries_.size() + 2);
        e.push_back(1);
        e.insert(e.end(), entries_.begin(), entries_.end());
        e.push_back(1);
        return seq(std::move(e));
    }

    bigint product() const {
        bigint p = 1;
        for (i64 v : entries_)
            p *= v;
        return p;
    }

    bool operator==(const seq&) const = default;

    std::string str() const;

private:
    std::vector<i64> entries_;
};

/// Joins integers with commas, the canonical text form used throughout the
/// CLI and error messages.
inline std::string join_csv(std::span<const i64> values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

inline std::string seq::str() const { return join_csv(entries_); }

/// A mixed-radix word: digits d_i with 0 <= d_i <= radix_i - 1, i.e. an
/// element of <s_1-1> x ... x <s_n-1>. Radix-1 positions force digit 0.
class word {
public:
    word(seq radices, std::vector<i64> digits)
        : radices_(std::move(radices)), digits_(std::move(digits)) {
        if (static_cast<i64>(digits_.size()) != radices_.size())
            throw std::invalid_argument(
                "length mismatch: " + std::to_string(digits_.size()) + " digits for " +
                std::to_string(radices_.size()) + " radices");
        for (std::size_t i = 0; i < digits_.size(); ++i)
            if (digits_[i] < 0 || digits_[i] >= radices_[i])
                throw std::invalid_argument("digit " + std::to_string(digits_[i]) +
                                            " out of range at position " +
                                            std::to_string(i + 1));
    }

    static word zero(const seq& radices) {
        return word(radices, std::vector<i64>(static_cast<std::size_t>(radices.size()), 0));
    }

    const seq& radices() const { return radices_; }
    const std::vector<i64>& digits() const { return digits_; }
    i64 size() const { return radices_.size(); }

    /// Appends digit 0 with radix 1: the section of "drop the last
    /// coordinate" on words whose last radix is 1.
    word padded_zero() const {
        std::vector<i64> d = digits_;
        d.push_back(0);
        return word(radices_.starred(), std::move(d));
    }

    /// Drops the final digit and radix; requires length >= 2.
    word dropped_last() const {
        if (size() < 2)
            throw std::invalid_argument("cannot drop last coordinate of a length-1 word");
        std::vector<i64> r(radices_.entries().begin(), radices_.entries().end() - 1);
        std::vector<i64> d(digits_.begin(), digits_.end() - 1);
        return word(seq(std::move(r)), std::move(d));
    }

    /// Digits and radices both reversed, mapping words over s to words over
    /// the reversal of s.
    word reversed() const {
        return word(radices_.reversed(),
                    std::vector<i64>(digits_.rbegin(), digits_.rend()));
    }

    bool operator==(const word&) const = default;

    std::string str() const { return join_csv(digits_); }

private:
    seq radices_;
    std::vector<i64> digits_;
};

/// An integer vector; membership in any particular point set is checked by
/// operations, not by the type.
using lattice_point = std::vector<i64>;

inline lattice_point drop_last_coord(const lattice_point& x) {
    if (x.size() < 2)
        throw std::invalid_argument("cannot drop last coordinate of a length-1 point");
    return lattice_point(x.begin(), x.end() - 1);
}

namespace detail {

// Mixed-radix odometer over digit positions [from, n), with digits[0, from)
// held fixed by the caller. Visits suffixes in lexicographic order and hands
// fn the full digit span each time.
template <class Fn>
void for_each_suffix(const seq& s, std::vector<i64>& digits, i64 from, Fn&& fn) {
    const i64 n = s.size();
    for (;;) {
        fn(std::span<const i64>(digits));
        i64 pos = n - 1;
        while (pos >= from && digits[static_cast<std::size_t>(pos)] == s[static_cast<std::size_t>(pos)] - 1) {
            digits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < from)
            return;
        ++digits[static_cast<std::size_t>(pos)];
    }
}

} // namespace detail

/// Calls fn(digits) for every word of the mixed-radix set of s, in
/// lexicographic order with the leftmost digit most significant. The span is
/// only valid during the call.
template <class Fn>
void for_each_word(const seq& s, Fn&& fn, const run_options& opt = {}) {
    detail::guard_cap(s.product(), opt, "word enumeration");
    std::vector<i64> digits(static_cast<std::size_t>(s.size()), 0);
    detail::for_each_suffix(s, digits, 0, fn);
}

/// Materializes the full word set; prefer for_each_word for large products.
inline std::vector<word> enumerate_words(const seq& s, const run_options& opt = {}) {
    std::vector<word> out;
    for_each_word(
        s,
        [&](std::span<const i64> digits) {
            out.emplace_back(s, std::vector<i64>(digits.begin(), digits.end()));
        },
        opt);
    return out;
}

inline seq seq::parse(std::string_view text) {
    auto parse_int = [](std::string_view item) -> i64 {
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        i64 value = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size())
            throw std::invalid_argument("cannot parse integer '" + std::string(item) + "'");
        return value;
    };

    if (text.starts_with("lecture:") || text.starts_with("anti:")) {
        const bool anti = text.starts_with("anti:");
        const i64 n = parse_int(text.substr(text.find(':') + 1));
        if (n < 1)
            throw std::invalid_argument("preset length must be >= 1");
        std::vector<i64> e(static_cast<std::size_t>(n));
        for (i64 i = 0; i < n; ++i)
            e[static_cast<std::size_t>(i)] = anti ? n - i : i + 1;
        return seq(std::move(e));
    }

    std::vector<i64> entries;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        entries.push_back(parse_int(text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return seq(std::move(entries));
}

} // namespace lhall
