#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace lhall {

// Exact arbitrary-precision integer. Every user-visible count, product and
// coefficient in this library is a bigint; fixed-width integers appear only
// where a proven bound keeps them exact.
using bigint = boost::multiprecision::cpp_int;

/// Binomial coefficient C(m, k) by the multiplicative formula. Each
/// intermediate division is exact. C(m, k) = 0 for k > m.
inline bigint binomial(std::int64_t m, std::int64_t k) {
    if (m < 0 || k < 0)
        throw std::invalid_argument("binomial: arguments must be nonnegative");
    if (k > m)
        return 0;
    k = std::min(k, m - k);
    bigint result = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        result *= bigint(m - k + j);
        result /= j;
    }
    return result;
}

} // namespace lhall
