#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "mpdm/bigint.hpp"
#include "mpdm/composition.hpp"
#include "mpdm/errors.hpp"

namespace mpdm {

// A complementary composition pair {c, c_bar} with c + c_bar = 2*c_typ.
// `c` is the lexicographically smaller member; the degenerate pair has
// c == c_bar == c_typ. `payload_bits` is k_l, the number of data bits one use
// of the pair carries; `usable` = 2^{k_l} sequences:
//   non-degenerate: 2 * min(floor2(N(c)), floor2(N(c_bar)))
//   degenerate:     floor2(N(c_typ))
struct CompositionPair {
    Composition c;
    Composition c_bar;
    bool degenerate;
    int payload_bits;
    BigCount usable;
};

namespace detail {

// log2(i!) lookup used to prefilter floor(log2 N_perms) decisions. Entries are
// accurate to ~1e-11 absolute; any value that lands within `kFloorGuard` of an
// integer boundary is re-decided with exact integer arithmetic.
class Log2Factorials {
public:
    explicit Log2Factorials(int max_n) : t_(static_cast<std::size_t>(max_n) + 1) {
        constexpr double inv_ln2 = 1.4426950408889634074;
        for (int i = 0; i <= max_n; ++i) t_[static_cast<std::size_t>(i)] = std::lgamma(i + 1.0) * inv_ln2;
    }
    double operator[](int i) const { return t_[static_cast<std::size_t>(i)]; }

private:
    std::vector<double> t_;
};

inline constexpr double kFloorGuard = 1e-6;

// floor(log2 multinomial(counts)) with a float prefilter and exact fallback.
inline int floor_log2_multinomial(std::span<const int> counts, int n, const Log2Factorials& lf) {
    double lg = lf[n];
    for (int c : counts) lg -= lf[c];
    const double fl = std::floor(lg);
    if (lg - fl > kFloorGuard && (fl + 1.0) - lg > kFloorGuard) return static_cast<int>(fl);
    return static_cast<int>(floor_log2(multinomial(counts)));
}

// k_l for a normalized pair given the floor(log2 N) of each member.
inline int pair_payload_bits(int f_c, int f_cbar, bool degenerate) {
    return degenerate ? f_c : 1 + std::min(f_c, f_cbar);
}

// Visits every unordered pair {c, 2*c_typ - c} with both members valid
// compositions of n, each pair exactly once with its lexicographically smaller
// member first. visit(c_counts, degenerate) -> void. The enumeration walks
// only compositions bounded by 2*c_typ per amplitude, pruning branches whose
// remaining budget is infeasible and the half of the space where c would be
// lexicographically larger than its complement.
template <class Visit>
void for_each_pair(const Composition& c_typ, Visit&& visit) {
    const int a = c_typ.alphabet_size();
    const int n = c_typ.total();
    std::vector<int> bound(static_cast<std::size_t>(a));
    std::vector<long long> bound_suffix(static_cast<std::size_t>(a) + 1, 0);
    for (int i = 0; i < a; ++i) bound[static_cast<std::size_t>(i)] = 2 * c_typ[static_cast<std::size_t>(i)];
    for (int i = a - 1; i >= 0; --i)
        bound_suffix[static_cast<std::size_t>(i)] =
            bound_suffix[static_cast<std::size_t>(i) + 1] + bound[static_cast<std::size_t>(i)];

    std::vector<int> c(static_cast<std::size_t>(a), 0);
    // undecided == true while every coordinate so far equals c_typ's; once a
    // coordinate dips below, the whole subtree satisfies c < c_bar.
    auto rec = [&](auto&& self, int i, int rem, bool undecided) -> void {
        if (i == a - 1) {
            if (rem > bound[static_cast<std::size_t>(i)]) return;
            if (undecided && rem > c_typ[static_cast<std::size_t>(i)]) return;
            c[static_cast<std::size_t>(i)] = rem;
            visit(std::span<const int>(c), undecided && rem == c_typ[static_cast<std::size_t>(i)]);
            return;
        }
        const long long need = rem - bound_suffix[static_cast<std::size_t>(i) + 1];
        const int lo = need > 0 ? static_cast<int>(need) : 0;
        int hi = std::min(bound[static_cast<std::size_t>(i)], rem);
        if (undecided) hi = std::min(hi, c_typ[static_cast<std::size_t>(i)]);
        for (int v = lo; v <= hi; ++v) {
            c[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, rem - v, undecided && v == c_typ[static_cast<std::size_t>(i)]);
        }
    };
    rec(rec, 0, n, true);
}

inline std::vector<int> complement_counts(std::span<const int> c, const Composition& c_typ) {
    std::vector<int> cb(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) cb[i] = 2 * c_typ[i] - c[i];
    return cb;
}

}  // namespace detail

// All unordered complementary pairs for c_typ, including the degenerate one,
// each listed once with the lexicographically smaller member first.
inline std::vector<CompositionPair> enumerate_pairs(const Composition& c_typ) {
    const int n = c_typ.total();
    detail::Log2Factorials lf(std::max(1, 2 * n));
    std::vector<CompositionPair> pairs;
    detail::for_each_pair(c_typ, [&](std::span<const int> c, bool degenerate) {
        std::vector<int> cb = detail::complement_counts(c, c_typ);
        const int f_c = detail::floor_log2_multinomial(c, n, lf);
        const int f_cb = degenerate ? f_c : detail::floor_log2_multinomial(cb, n, lf);
        const int kl = detail::pair_payload_bits(f_c, f_cb, degenerate);
        pairs.push_back({Composition(std::vector<int>(c.begin(), c.end())),
                         Composition(std::move(cb)), degenerate, kl, pow2(static_cast<unsigned>(kl))});
    });
    return pairs;
}

// Breakdown of the inclusion-exclusion count of bounded compositions.
struct BoundedCompositionCount {
    BigCount unconstrained;                 // stars-and-bars count of all compositions
    std::vector<BigCount> single_excluded;  // per amplitude, compositions its bound removes
    std::vector<BigCount> level_sums;       // level_sums[j] = sum over all j-subsets, j >= 1
    BigCount total;                         // alternating sum
};

// Number of compositions C of n with 0 <= C_i <= 2*c_typ_i, by inclusion-
// exclusion over amplitude subsets (no enumeration).
inline BoundedCompositionCount count_valid_compositions_detail(const Composition& c_typ) {
    const int a = c_typ.alphabet_size();
    const int n = c_typ.total();
    if (a > 30) throw InvalidArgument("count_valid_compositions: alphabet too large for subset sweep");
    BoundedCompositionCount out;
    out.unconstrained = num_compositions(n, a);
    out.single_excluded.assign(static_cast<std::size_t>(a), 0);
    out.level_sums.assign(static_cast<std::size_t>(a) + 1, 0);
    out.total = out.unconstrained;
    const unsigned subsets = 1u << a;
    for (unsigned mask = 1; mask < subsets; ++mask) {
        long long over = 0;
        int bits = 0;
        for (int i = 0; i < a; ++i)
            if (mask & (1u << i)) {
                over += 2 * c_typ[static_cast<std::size_t>(i)] + 1;
                ++bits;
            }
        const long long rest = n - over;
        if (rest < 0) continue;
        BigCount term = binomial(static_cast<unsigned>(rest + a - 1), static_cast<unsigned>(rest));
        out.level_sums[static_cast<std::size_t>(bits)] += term;
        if (bits == 1) {
            for (int i = 0; i < a; ++i)
                if (mask & (1u << i)) out.single_excluded[static_cast<std::size_t>(i)] = term;
        }
        if (bits % 2 == 1)
            out.total -= term;
        else
            out.total += term;
    }
    return out;
}

inline BigCount count_valid_compositions(const Composition& c_typ) {
    return count_valid_compositions_detail(c_typ).total;
}

// Total permutation count over the pairs, before any power-of-two flooring:
// 2*min(N(c), N(c_bar)) per non-degenerate pair, N(c_typ) for the degenerate.
inline BigCount total_pairwise_permutations(const std::vector<CompositionPair>& pairs) {
    BigCount total = 0;
    for (const CompositionPair& p : pairs) {
        if (p.degenerate) {
            total += multinomial(p.c);
        } else {
            total += 2 * std::min(multinomial(p.c), multinomial(p.c_bar));
        }
    }
    return total;
}

}  // namespace mpdm
