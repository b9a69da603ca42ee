#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mpdm/bigint.hpp"
#include "mpdm/bits.hpp"
#include "mpdm/composition.hpp"
#include "mpdm/errors.hpp"

namespace mpdm {

namespace detail {

// Shared state for walking the lexicographic enumeration of the multiset
// permutations of a composition. `total` is the number of distinct
// continuations of the current prefix; callers supply the initial value
// (the type-class size) so codecs can reuse a cached one.
struct MultisetWalk {
    std::vector<int> counts;
    int remaining;
    BigCount total;
    BigCount scratch;

    MultisetWalk(const Composition& c, BigCount type_class_size)
        : counts(c.counts()), remaining(c.total()), total(std::move(type_class_size)) {}

    // Continuations that start with symbol index s (0-based). Exact: the
    // product total * counts[s] is always divisible by `remaining`.
    const BigCount& branch(int s) {
        scratch = total * counts[static_cast<std::size_t>(s)];
        scratch /= remaining;
        return scratch;
    }

    void descend(int s) {
        --counts[static_cast<std::size_t>(s)];
        --remaining;
        total.swap(scratch);
    }
};

// Symbols are one byte each (1-based), which caps the alphabet.
inline void check_alphabet_representable(const Composition& c) {
    if (c.alphabet_size() > 255)
        throw InvalidArgument("alphabet sizes beyond 255 are not representable as byte sequences");
}

// Core unranking; requires 0 <= index < type_class_size.
inline Sequence unrank_impl(const Composition& c, BigCount index, BigCount type_class_size) {
    const int a = c.alphabet_size();
    MultisetWalk walk(c, std::move(type_class_size));
    Sequence out;
    out.reserve(static_cast<std::size_t>(c.total()));
    for (int pos = 0; pos < c.total(); ++pos) {
        for (int s = 0; s < a; ++s) {
            if (walk.counts[static_cast<std::size_t>(s)] == 0) continue;
            const BigCount& below = walk.branch(s);
            if (index < below) {
                out.push_back(static_cast<std::uint8_t>(s + 1));
                walk.descend(s);
                break;
            }
            index -= below;
        }
    }
    return out;
}

// Core ranking; requires seq to have composition c.
inline BigCount rank_impl(const Sequence& seq, const Composition& c, BigCount type_class_size) {
    MultisetWalk walk(c, std::move(type_class_size));
    BigCount r = 0;
    for (std::uint8_t sym : seq) {
        const int s = sym - 1;
        for (int t = 0; t < s; ++t) {
            if (walk.counts[static_cast<std::size_t>(t)] == 0) continue;
            r += walk.branch(t);
        }
        walk.branch(s);
        walk.descend(s);
    }
    return r;
}

}  // namespace detail

// The index-th distinct sequence with composition c, in lexicographic order by
// amplitude index. Exact-arithmetic equivalent of arithmetic-coding CCDM.
inline Sequence unrank(const Composition& c, BigCount index) {
    detail::check_alphabet_representable(c);
    BigCount total = multinomial(c);
    if (index < 0 || index >= total) throw InvalidArgument("unrank: index out of range");
    return detail::unrank_impl(c, std::move(index), std::move(total));
}

// Lexicographic rank of seq among all distinct sequences with composition c.
// Inverse of unrank.
inline BigCount rank(const Sequence& seq, const Composition& c) {
    if (sequence_composition(seq, c.alphabet_size()) != c)
        throw CompositionMismatch("rank: sequence does not have the given composition");
    return detail::rank_impl(seq, c, multinomial(c));
}

// Fixed-length constant-composition matcher: a bijection between the 2^k
// k-bit words (k = floor(log2) of the type-class size) and the
// lexicographically first 2^k sequences of the composition.
class CcdmCodec {
public:
    explicit CcdmCodec(Composition composition)
        : comp_(std::move(composition)),
          total_((detail::check_alphabet_representable(comp_), multinomial(comp_))),
          k_(static_cast<int>(floor_log2(total_))) {}

    const Composition& composition() const noexcept { return comp_; }
    int block_length() const noexcept { return comp_.total(); }  // n
    int input_bits() const noexcept { return k_; }               // k

    Sequence encode(const Bits& word) const {
        if (static_cast<int>(word.size()) != k_)
            throw LengthError("ccdm encode: word has wrong length");
        return detail::unrank_impl(comp_, bits_to_bigint(word), BigCount(total_));
    }

    Bits decode(const Sequence& seq) const {
        if (sequence_composition(seq, comp_.alphabet_size()) != comp_)
            throw CompositionMismatch("ccdm decode: sequence does not have the codec's composition");
        BigCount r = detail::rank_impl(seq, comp_, BigCount(total_));
        if (!fits_bits(r, static_cast<unsigned>(k_)))
            throw UnaddressableSequence("ccdm decode: sequence outside the used codebook");
        return bigint_to_bits(r, static_cast<std::size_t>(k_));
    }

private:
    Composition comp_;
    BigCount total_;
    int k_;
};

}  // namespace mpdm
