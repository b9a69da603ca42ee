#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "mpdm/bigint.hpp"
#include "mpdm/errors.hpp"
#include "mpdm/pmf.hpp"

namespace mpdm {

// A sequence of amplitude indices, 1-based: element values lie in [1, |A|].
using Sequence = std::vector<std::uint8_t>;

// Occurrence counts {n_1,...,n_|A|} of each amplitude in a length-n block.
class Composition {
public:
    explicit Composition(std::vector<int> counts) : counts_(std::move(counts)) {
        if (counts_.empty()) throw InvalidArgument("Composition: empty counts");
        n_ = 0;
        for (int c : counts_) {
            if (c < 0) throw InvalidArgument("Composition: negative count");
            n_ += c;
        }
    }

    int total() const noexcept { return n_; }                       // n
    int alphabet_size() const noexcept { return static_cast<int>(counts_.size()); }
    int operator[](std::size_t i) const { return counts_[i]; }
    const std::vector<int>& counts() const noexcept { return counts_; }

    bool operator==(const Composition& o) const noexcept { return counts_ == o.counts_; }
    std::strong_ordering operator<=>(const Composition& o) const noexcept {
        return std::lexicographical_compare_three_way(counts_.begin(), counts_.end(),
                                                      o.counts_.begin(), o.counts_.end());
    }

private:
    std::vector<int> counts_;
    int n_;
};

// Exact n!/(n_1! ... n_|A|!). Computed as a product of binomial factors so every
// intermediate value is integral.
inline BigCount multinomial(std::span<const int> counts) {
    BigCount r = 1;
    long long placed = 0;
    for (int c : counts) {
        for (int j = 1; j <= c; ++j) {
            r *= ++placed;
            r /= j;
        }
    }
    return r;
}

inline BigCount multinomial(const Composition& c) {
    return multinomial(std::span<const int>(c.counts()));
}

// Number of compositions of n into a parts: C(n + a - 1, n).
inline BigCount num_compositions(int n, int a) {
    if (n < 1 || a < 1) throw InvalidArgument("num_compositions: need n >= 1 and a >= 1");
    return binomial(static_cast<unsigned>(n + a - 1), static_cast<unsigned>(n));
}

// Histogram of a sequence over alphabet size a.
inline Composition sequence_composition(const Sequence& seq, int a) {
    if (a < 1) throw InvalidArgument("sequence_composition: alphabet size must be >= 1");
    std::vector<int> counts(static_cast<std::size_t>(a), 0);
    for (std::uint8_t s : seq) {
        if (s < 1 || s > a) throw InvalidArgument("sequence_composition: symbol outside alphabet");
        ++counts[static_cast<std::size_t>(s) - 1];
    }
    return Composition(std::move(counts));
}

// Quantizes p to a composition of n minimizing D(P_q || p), P_q = counts/n.
// Ties resolve to the lexicographically smallest counts vector.
//
// The objective is separable and convex in each count, so the exact minimizer
// is obtained by taking the n cheapest unit increments. Increment m -> m+1 of
// amplitude i costs (m+1)log2(m+1) - m log2(m) - log2(n p_i), strictly
// increasing in m. Threshold ties go to the highest amplitude index, which
// yields the lexicographically smallest minimizer.
inline Composition quantize_pmf(const Pmf& p, int n) {
    if (n < 1) throw InvalidArgument("quantize_pmf: n must be >= 1");
    const std::size_t a = p.size();

    std::vector<double> step(static_cast<std::size_t>(n) + 1, 0.0);  // m log2 m
    for (std::size_t m = 2; m < step.size(); ++m)
        step[m] = static_cast<double>(m) * std::log2(static_cast<double>(m));

    struct Inc {
        double cost;
        int idx;
        int m;
    };
    std::vector<Inc> incs;
    incs.reserve(a * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < a; ++i) {
        if (p[i] <= 0.0) continue;  // zero-probability amplitudes keep count 0
        const double base = std::log2(n * p[i]);
        for (int m = 0; m < n; ++m)
            incs.push_back({step[static_cast<std::size_t>(m) + 1] - step[static_cast<std::size_t>(m)] - base,
                            static_cast<int>(i), m});
    }
    std::sort(incs.begin(), incs.end(), [](const Inc& x, const Inc& y) {
        if (x.cost != y.cost) return x.cost < y.cost;
        if (x.idx != y.idx) return x.idx > y.idx;  // ties: prefer later amplitudes
        return x.m < y.m;
    });

    std::vector<int> counts(a, 0);
    for (int t = 0; t < n; ++t) ++counts[static_cast<std::size_t>(incs[static_cast<std::size_t>(t)].idx)];
    return Composition(std::move(counts));
}

}  // namespace mpdm
