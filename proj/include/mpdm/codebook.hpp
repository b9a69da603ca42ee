#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpdm/bigint.hpp"
#include "mpdm/bits.hpp"
#include "mpdm/ccdm.hpp"
#include "mpdm/composition.hpp"
#include "mpdm/errors.hpp"
#include "mpdm/pairs.hpp"
#include "mpdm/pmf.hpp"

namespace mpdm {

// Finite-length rate loss in bits per amplitude symbol: H(p_target) - k/n.
inline double rate_loss(int k, int n, const Pmf& p_target) {
    if (n < 1) throw InvalidArgument("rate_loss: n must be >= 1");
    return entropy(p_target) - static_cast<double>(k) / n;
}

namespace detail {

// One enumeration pass over the pairs of c_typ, yielding each normalized pair's
// k_l. Used both for the k-only computation and for codebook construction.
template <class Visit>
void scan_pair_payload_bits(const Composition& c_typ, Visit&& visit) {
    const int n = c_typ.total();
    Log2Factorials lf(std::max(1, 2 * n));
    std::vector<int> cb(static_cast<std::size_t>(c_typ.alphabet_size()));
    for_each_pair(c_typ, [&](std::span<const int> c, bool degenerate) {
        const int f_c = floor_log2_multinomial(c, n, lf);
        int f_cb = f_c;
        if (!degenerate) {
            for (std::size_t i = 0; i < cb.size(); ++i) cb[i] = 2 * c_typ[i] - c[i];
            f_cb = floor_log2_multinomial(cb, n, lf);
        }
        visit(c, degenerate, pair_payload_bits(f_c, f_cb, degenerate));
    });
}

inline BigCount sum_of_pow2(const std::vector<long long>& count_per_exponent) {
    BigCount s = 0;
    for (std::size_t e = 0; e < count_per_exponent.size(); ++e)
        if (count_per_exponent[e] != 0) s += BigCount(count_per_exponent[e]) << static_cast<unsigned>(e);
    return s;
}

}  // namespace detail

// Input bits k of the pairwise binary-tree matcher for c_typ, without building
// the codebook: k = floor(log2 sum_l 2^{k_l}) over all pairs.
inline int mpdm_input_bits(const Composition& c_typ) {
    if (c_typ.total() < 1) throw InvalidArgument("mpdm_input_bits: n must be >= 1");
    std::vector<long long> hist;
    detail::scan_pair_payload_bits(c_typ, [&](std::span<const int>, bool, int kl) {
        if (hist.size() <= static_cast<std::size_t>(kl)) hist.resize(static_cast<std::size_t>(kl) + 1, 0);
        ++hist[static_cast<std::size_t>(kl)];
    });
    return static_cast<int>(floor_log2(detail::sum_of_pow2(hist)));
}

// A constructed pairwise binary-tree matcher. Immutable after construction;
// encode/decode are pure per block and safe to run concurrently.
//
// The k-bit input word, read as an integer W (MSB first), selects a codeword as
// follows: the selected pairs partition [0, 2^k) into consecutive intervals of
// length 2^{k_l}, ordered by descending k_l (ties: ascending lexicographic
// order of the pair's smaller member). Within a pair's interval, the top bit
// picks the member (0 = lexicographically smaller; omitted for the degenerate
// pair) and the remaining bits are the constant-composition rank. This is
// exactly the canonical prefix code with lengths p_l = k - k_l: the prefix of
// pair l is its interval start divided by 2^{k_l}.
class MpdmCodebook {
public:
    struct PairView {
        Composition c;
        Composition c_bar;
        bool degenerate;
        int payload_bits;    // k_l
        std::string prefix;  // p_l = k - k_l bits
    };

    int block_length() const noexcept { return n_; }  // n
    int input_bits() const noexcept { return k_; }    // k
    int alphabet_size() const noexcept { return alphabet_; }
    const Composition& typical() const noexcept { return c_typ_; }
    const Pmf& target() const noexcept { return target_; }
    std::size_t pair_count() const noexcept { return pair_kl_.size(); }
    bool degenerate_selected() const noexcept { return deg_idx_ != kNoPair; }

    PairView pair(std::size_t idx) const {
        check_pair_index(idx);
        const int kl = pair_kl_[idx];
        const int plen = k_ - kl;
        BigCount code = pair_start(idx) >> static_cast<unsigned>(kl);
        std::string prefix(static_cast<std::size_t>(plen), '0');
        for (int b = 0; b < plen; ++b)
            if (boost::multiprecision::bit_test(code, static_cast<unsigned>(b)))
                prefix[static_cast<std::size_t>(plen - 1 - b)] = '1';
        return {member_composition(idx, 0), member_composition(idx, 1), idx == deg_idx_, kl,
                std::move(prefix)};
    }

    // Pair index and member bit for a composition, if it is part of the codebook.
    std::optional<std::pair<std::size_t, int>> locate(const Composition& comp) const {
        if (comp.alphabet_size() != alphabet_ || comp.total() != n_) return std::nullopt;
        auto it = std::lower_bound(lookup_.begin(), lookup_.end(), comp.counts(),
                                   [&](std::uint64_t entry, const std::vector<int>& key) {
                                       return compare_member(entry, key) < 0;
                                   });
        if (it == lookup_.end() || compare_member(*it, comp.counts()) != 0) return std::nullopt;
        return std::make_pair(static_cast<std::size_t>(*it >> 1), static_cast<int>(*it & 1));
    }

    Sequence encode(const Bits& word) const {
        if (static_cast<int>(word.size()) != k_) throw LengthError("mpdm encode: word has wrong length");
        BigCount w = bits_to_bigint(word);
        const Group& g = *std::prev(std::upper_bound(
            groups_.begin(), groups_.end(), w,
            [](const BigCount& value, const Group& grp) { return value < grp.start; }));
        const unsigned kl = static_cast<unsigned>(g.payload_bits);
        BigCount local = w - g.start;
        const std::uint64_t offset = static_cast<std::uint64_t>(local >> kl);
        if (offset >= g.count) throw Error("mpdm encode: prefix space violated");  // unreachable by Kraft equality
        local -= BigCount(offset) << kl;
        const std::size_t idx = g.first + offset;
        int member = 0;
        if (idx != deg_idx_) {
            if (boost::multiprecision::bit_test(local, kl - 1)) {
                member = 1;
                boost::multiprecision::bit_unset(local, kl - 1);
            }
        }
        return detail::unrank_impl(member_composition(idx, member), std::move(local),
                                   BigCount(member_total(idx, member)));
    }

    Bits decode(const Sequence& seq) const {
        if (static_cast<int>(seq.size()) != n_) throw LengthError("mpdm decode: sequence has wrong length");
        Composition comp = sequence_composition(seq, alphabet_);
        auto hit = locate(comp);
        if (!hit) throw UnknownComposition("mpdm decode: composition not in codebook");
        const auto [idx, member] = *hit;
        const Group& g = group_of(idx);
        const unsigned kl = static_cast<unsigned>(g.payload_bits);
        BigCount r = detail::rank_impl(seq, comp, BigCount(member_total(idx, member)));
        const unsigned payload_width = idx == deg_idx_ ? kl : kl - 1;
        if (!fits_bits(r, payload_width))
            throw UnaddressableSequence("mpdm decode: sequence outside the used codebook");
        if (member == 1) boost::multiprecision::bit_set(r, kl - 1);
        r += g.start;
        r += BigCount(idx - g.first) << kl;
        return bigint_to_bits(r, static_cast<std::size_t>(k_));
    }

    friend MpdmCodebook build_codebook(const Composition& c_typ, std::optional<Pmf> target);
    friend MpdmCodebook assemble_codebook(const Composition& c_typ, const Pmf& target, int k,
                                          const std::vector<std::pair<std::vector<int>, int>>& pairs);

private:
    static constexpr std::size_t kNoPair = static_cast<std::size_t>(-1);

    struct Group {
        int payload_bits;
        std::uint32_t first;
        std::uint32_t count;
        BigCount start;  // interval start of the group's first pair in [0, 2^k)
    };

    MpdmCodebook(Composition c_typ, Pmf target)
        : n_(c_typ.total()),
          alphabet_(c_typ.alphabet_size()),
          k_(0),
          c_typ_(std::move(c_typ)),
          target_(std::move(target)) {}

    void check_pair_index(std::size_t idx) const {
        if (idx >= pair_kl_.size()) throw InvalidArgument("pair index out of range");
    }

    int member_count(std::size_t idx, int member, std::size_t i) const {
        const int rep = reps_[idx * static_cast<std::size_t>(alphabet_) + i];
        return member == 0 ? rep : 2 * c_typ_[i] - rep;
    }

    Composition member_composition(std::size_t idx, int member) const {
        std::vector<int> counts(static_cast<std::size_t>(alphabet_));
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = member_count(idx, member, i);
        return Composition(std::move(counts));
    }

    const BigCount& member_total(std::size_t idx, int member) const {
        return member_total_[(idx << 1) | static_cast<std::size_t>(member)];
    }

    int compare_member(std::uint64_t entry, const std::vector<int>& key) const {
        const std::size_t idx = static_cast<std::size_t>(entry >> 1);
        const int member = static_cast<int>(entry & 1);
        for (std::size_t i = 0; i < key.size(); ++i) {
            const int v = member_count(idx, member, i);
            if (v != key[i]) return v < key[i] ? -1 : 1;
        }
        return 0;
    }

    const Group& group_of(std::size_t idx) const {
        auto it = std::prev(std::upper_bound(
            groups_.begin(), groups_.end(), idx,
            [](std::size_t value, const Group& grp) { return value < grp.first; }));
        return *it;
    }

    BigCount pair_start(std::size_t idx) const {
        const Group& g = group_of(idx);
        return g.start + (BigCount(idx - g.first) << static_cast<unsigned>(g.payload_bits));
    }

    // Builds groups_ and lookup_ from reps_/pair_kl_ already in codebook order.
    void finalize() {
        groups_.clear();
        BigCount start = 0;
        for (std::size_t i = 0; i < pair_kl_.size(); ++i) {
            if (groups_.empty() || groups_.back().payload_bits != pair_kl_[i]) {
                groups_.push_back({pair_kl_[i], static_cast<std::uint32_t>(i), 0, start});
            }
            ++groups_.back().count;
            start += pow2(static_cast<unsigned>(pair_kl_[i]));
        }
        if (start != pow2(static_cast<unsigned>(k_)))
            throw Error("mpdm codebook: selected pairs do not fill the input space");
        member_total_.clear();
        member_total_.resize(2 * pair_kl_.size());
        for (std::size_t i = 0; i < pair_kl_.size(); ++i) {
            member_total_[i << 1] = multinomial(member_composition(i, 0).counts());
            member_total_[(i << 1) | 1] =
                i == deg_idx_ ? member_total_[i << 1] : multinomial(member_composition(i, 1).counts());
        }
        lookup_.clear();
        lookup_.reserve(2 * pair_kl_.size());
        for (std::size_t i = 0; i < pair_kl_.size(); ++i) {
            lookup_.push_back(static_cast<std::uint64_t>(i) << 1);
            if (i != deg_idx_) lookup_.push_back((static_cast<std::uint64_t>(i) << 1) | 1);
        }
        std::sort(lookup_.begin(), lookup_.end(), [&](std::uint64_t x, std::uint64_t y) {
            const std::size_t yi = static_cast<std::size_t>(y >> 1);
            const int ym = static_cast<int>(y & 1);
            std::vector<int> key(static_cast<std::size_t>(alphabet_));
            for (std::size_t i = 0; i < key.size(); ++i) key[i] = member_count(yi, ym, i);
            return compare_member(x, key) < 0;
        });
    }

    int n_;
    int alphabet_;
    int k_;
    Composition c_typ_;
    Pmf target_;
    std::vector<int> reps_;             // flat, alphabet_ stride, smaller member of each pair
    std::vector<int> pair_kl_;          // k_l per pair, codebook order
    std::vector<BigCount> member_total_;  // type-class sizes, 2 slots per pair
    std::size_t deg_idx_ = kNoPair;     // index of the degenerate pair, if selected
    std::vector<Group> groups_;         // runs of equal k_l
    std::vector<std::uint64_t> lookup_;  // (pair << 1) | member, sorted by member counts
};

// Assembles a codebook from an explicit ordered pair list (smaller member
// counts + k_l each). Verifies the list is a valid selection: pairs well formed
// and distinct, k_l values correct, order canonical, and usable counts summing
// to exactly 2^k. Used by descriptor loading.
inline MpdmCodebook assemble_codebook(const Composition& c_typ, const Pmf& target, int k,
                                      const std::vector<std::pair<std::vector<int>, int>>& pairs) {
    const int n = c_typ.total();
    const int a = c_typ.alphabet_size();
    detail::Log2Factorials lf(std::max(1, 2 * n));
    MpdmCodebook cb(c_typ, target);
    cb.k_ = k;
    cb.reps_.reserve(pairs.size() * static_cast<std::size_t>(a));
    cb.pair_kl_.reserve(pairs.size());
    std::vector<int> comp(static_cast<std::size_t>(a));
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        const auto& [rep, kl] = pairs[idx];
        if (static_cast<int>(rep.size()) != a) throw ParseError("codebook pair: wrong alphabet size");
        int sum = 0;
        bool degenerate = true;
        for (int i = 0; i < a; ++i) {
            const int v = rep[static_cast<std::size_t>(i)];
            if (v < 0 || v > 2 * c_typ[static_cast<std::size_t>(i)])
                throw ParseError("codebook pair: counts exceed pair bounds");
            comp[static_cast<std::size_t>(i)] = 2 * c_typ[static_cast<std::size_t>(i)] - v;
            sum += v;
            degenerate &= v == c_typ[static_cast<std::size_t>(i)];
        }
        if (sum != n) throw ParseError("codebook pair: counts do not sum to n");
        if (std::lexicographical_compare(comp.begin(), comp.end(), rep.begin(), rep.end()))
            throw ParseError("codebook pair: member order not normalized");
        const int f_c = detail::floor_log2_multinomial(rep, n, lf);
        const int f_cb = degenerate ? f_c : detail::floor_log2_multinomial(comp, n, lf);
        if (kl != detail::pair_payload_bits(f_c, f_cb, degenerate))
            throw ParseError("codebook pair: payload bit count inconsistent with type sizes");
        if (idx > 0) {
            const auto& [prev, prev_kl] = pairs[idx - 1];
            if (prev_kl < kl || (prev_kl == kl && prev >= rep))
                throw ParseError("codebook pairs: not in canonical order");
        }
        if (degenerate) cb.deg_idx_ = idx;
        cb.reps_.insert(cb.reps_.end(), rep.begin(), rep.end());
        cb.pair_kl_.push_back(kl);
    }
    if (pairs.empty()) throw ParseError("codebook: no pairs");
    try {
        cb.finalize();  // also checks the exact 2^k fill
    } catch (const Error& e) {
        throw ParseError(std::string("codebook: ") + e.what());
    }
    return cb;
}

// Algorithm: enumerate all complementary pairs of c_typ; give each its
// power-of-two usable count 2^{k_l}; k = floor(log2) of the grand total; then
// select greedily in (k_l desc, lex) order, skipping pairs that would
// overshoot, until the selection sums to exactly 2^k. Powers of two make the
// greedy subset-sum exact.
inline MpdmCodebook build_codebook(const Composition& c_typ, std::optional<Pmf> target = std::nullopt) {
    const int n = c_typ.total();
    const int a = c_typ.alphabet_size();
    if (n < 1) throw InvalidArgument("build_codebook: n must be >= 1");
    detail::check_alphabet_representable(c_typ);
    if (!target) {
        std::vector<double> probs(static_cast<std::size_t>(a));
        for (int i = 0; i < a; ++i)
            probs[static_cast<std::size_t>(i)] = static_cast<double>(c_typ[static_cast<std::size_t>(i)]) / n;
        target.emplace(std::move(probs));
    }

    // candidate pass
    std::vector<int> cand_reps;
    std::vector<int> cand_kl;
    std::vector<long long> hist;
    detail::scan_pair_payload_bits(c_typ, [&](std::span<const int> c, bool, int kl) {
        cand_reps.insert(cand_reps.end(), c.begin(), c.end());
        cand_kl.push_back(kl);
        if (hist.size() <= static_cast<std::size_t>(kl)) hist.resize(static_cast<std::size_t>(kl) + 1, 0);
        ++hist[static_cast<std::size_t>(kl)];
    });
    const int k = static_cast<int>(floor_log2(detail::sum_of_pow2(hist)));

    // canonical order
    std::vector<std::uint32_t> order(cand_kl.size());
    std::iota(order.begin(), order.end(), 0u);
    const std::size_t stride = static_cast<std::size_t>(a);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (cand_kl[x] != cand_kl[y]) return cand_kl[x] > cand_kl[y];
        return std::lexicographical_compare(cand_reps.begin() + x * stride, cand_reps.begin() + (x + 1) * stride,
                                            cand_reps.begin() + y * stride, cand_reps.begin() + (y + 1) * stride);
    });

    // greedy exact fill of 2^k
    MpdmCodebook cb(c_typ, std::move(*target));
    cb.k_ = k;
    BigCount rem = pow2(static_cast<unsigned>(k));
    for (std::uint32_t idx : order) {
        if (rem == 0) break;
        const int kl = cand_kl[idx];
        if (static_cast<unsigned>(kl) > floor_log2(rem)) continue;  // would overshoot
        rem -= pow2(static_cast<unsigned>(kl));
        const auto begin = cand_reps.begin() + idx * stride;
        bool degenerate = std::equal(begin, begin + stride, c_typ.counts().begin());
        if (degenerate) cb.deg_idx_ = cb.pair_kl_.size();
        cb.reps_.insert(cb.reps_.end(), begin, begin + stride);
        cb.pair_kl_.push_back(kl);
    }
    cb.finalize();
    return cb;
}

inline MpdmCodebook build_codebook(const Pmf& target, int n) {
    return build_codebook(quantize_pmf(target, n), target);
}

}  // namespace mpdm
