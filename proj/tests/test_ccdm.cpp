#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mpdm/ccdm.hpp"
#include "oracles.hpp"

using namespace mpdm;

TEST_CASE("unrank walks the type class in lexicographic order") {
    const Composition c({2, 1, 1});
    CHECK(unrank(c, 0) == Sequence{1, 1, 2, 3});
    const auto all = oracle::all_arrangements({2, 1, 1});
    REQUIRE(all.size() == 12);
    CHECK(unrank(c, 7) == all[7]);
    CHECK(all[7] == Sequence{2, 1, 3, 1});
    CHECK(unrank(c, 11) == all[11]);
    CHECK(all[11] == Sequence{3, 2, 1, 1});
    CHECK_THROWS_AS(unrank(c, 12), InvalidArgument);
}

TEST_CASE("rank inverts unrank") {
    const Composition c({2, 1, 1});
    CHECK(rank({1, 1, 2, 3}, c) == 0);
    CHECK(rank({2, 1, 3, 1}, c) == 7);
    CHECK_THROWS_AS(rank({1, 1, 1, 1}, c), CompositionMismatch);
}

TEST_CASE("rank and unrank agree with enumeration for every small type") {
    for (int a = 2; a <= 4; ++a) {
        for (int n = 1; n <= 8; ++n) {
            for (const auto& counts : oracle::all_compositions(n, a)) {
                const Composition c(counts);
                const auto all = oracle::all_arrangements(counts);
                REQUIRE(BigCount(all.size()) == multinomial(c));
                for (std::size_t i = 0; i < all.size(); ++i) {
                    CAPTURE(counts, i);
                    CHECK(unrank(c, BigCount(i)) == all[i]);
                    CHECK(rank(all[i], c) == BigCount(i));
                }
            }
        }
    }
}

TEST_CASE("unrank is monotone in the index") {
    for (const auto& counts : {std::vector<int>{3, 3, 2}, std::vector<int>{5, 2, 1, 1}}) {
        const Composition c(counts);
        const BigCount total = multinomial(c);
        REQUIRE(total <= 10000);
        Sequence prev = unrank(c, 0);
        for (BigCount i = 1; i < total; ++i) {
            Sequence cur = unrank(c, i);
            CHECK(std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()));
            prev = std::move(cur);
        }
    }
}

TEST_CASE("ccdm codec maps words of exactly k bits") {
    const CcdmCodec codec(Composition({2, 1, 1}));  // 12 arrangements -> k = 3
    REQUIRE(codec.input_bits() == 3);
    CHECK(codec.encode({0, 0, 0}) == Sequence{1, 1, 2, 3});
    CHECK(codec.encode({1, 1, 1}) == Sequence{2, 1, 3, 1});
    CHECK_THROWS_AS(codec.encode({0, 0, 0, 0}), LengthError);

    CHECK(codec.decode({1, 1, 2, 3}) == Bits{0, 0, 0});
    CHECK(codec.decode({2, 1, 3, 1}) == Bits{1, 1, 1});
    // rank 11 >= 2^3: valid type member, but outside the used codebook
    CHECK_THROWS_AS(codec.decode({3, 2, 1, 1}), UnaddressableSequence);
    CHECK_THROWS_AS(codec.decode({1, 1, 1, 1}), CompositionMismatch);
}

TEST_CASE("every ccdm output has the codec's composition") {
    const CcdmCodec codec(Composition({3, 2, 1}));
    for (BigCount i = 0; i < pow2(static_cast<unsigned>(codec.input_bits())); ++i) {
        const Sequence seq = unrank(codec.composition(), i);
        CHECK(sequence_composition(seq, 3) == codec.composition());
    }
}

TEST_CASE("ccdm roundtrip is exhaustive for small codecs and random for large") {
    std::mt19937_64 rng(41);
    for (const auto& counts :
         {std::vector<int>{4, 3, 2, 1}, std::vector<int>{6, 4}, std::vector<int>{2, 2, 2, 2}}) {
        const CcdmCodec codec((Composition(counts)));
        REQUIRE(codec.input_bits() <= 16);
        for (std::uint64_t w = 0; w < (1ull << codec.input_bits()); ++w) {
            const Bits word = bigint_to_bits(BigCount(w), static_cast<std::size_t>(codec.input_bits()));
            CHECK(codec.decode(codec.encode(word)) == word);
        }
    }
    const CcdmCodec big(Composition({26, 19, 10, 5}));  // n = 60
    REQUIRE(big.input_bits() > 16);
    for (int trial = 0; trial < 500; ++trial) {
        const Bits word = oracle::random_word(rng, big.input_bits());
        CHECK(big.decode(big.encode(word)) == word);
    }
}

TEST_CASE("degenerate single-amplitude codec has zero payload") {
    const CcdmCodec codec(Composition({5, 0}));
    CHECK(codec.input_bits() == 0);
    CHECK(codec.encode({}) == Sequence{1, 1, 1, 1, 1});
    CHECK(codec.decode({1, 1, 1, 1, 1}).empty());
}
