#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "mpdm/errors.hpp"

namespace mpdm {

// Exact arbitrary-precision count. All permutation counting in this library is
// integer-exact; doubles only ever prefilter comparisons that are re-decided
// exactly near boundaries.
using BigCount = boost::multiprecision::cpp_int;

// Largest k with 2^k <= v.
inline unsigned floor_log2(const BigCount& v) {
    if (v <= 0) throw InvalidArgument("floor_log2: argument must be positive");
    return boost::multiprecision::msb(v);
}

inline BigCount pow2(unsigned e) {
    return BigCount(1) << e;
}

// Largest power of two <= v.
inline BigCount floor_pow2(const BigCount& v) {
    return pow2(floor_log2(v));
}

// True when v < 2^k (i.e. v fits in k bits), without building 2^k.
inline bool fits_bits(const BigCount& v, unsigned k) {
    return v == 0 || boost::multiprecision::msb(v) < k;
}

inline BigCount binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigCount r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is the binomial C(n-k+i, i) after each step
    }
    return r;
}

}  // namespace mpdm
