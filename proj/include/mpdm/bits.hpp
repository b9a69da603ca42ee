#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpdm/bigint.hpp"
#include "mpdm/errors.hpp"

namespace mpdm {

// A bit word, one bit per element (0 or 1), most significant bit first.
using Bits = std::vector<std::uint8_t>;

inline BigCount bits_to_bigint(const Bits& bits) {
    BigCount v = 0;
    std::size_t i = 0;
    while (i < bits.size()) {
        std::uint64_t chunk = 0;
        std::size_t take = std::min<std::size_t>(64, bits.size() - i);
        for (std::size_t j = 0; j < take; ++j) chunk = (chunk << 1) | (bits[i + j] & 1u);
        v <<= static_cast<unsigned>(take);
        v |= chunk;
        i += take;
    }
    return v;
}

inline Bits bigint_to_bits(const BigCount& v, std::size_t width) {
    if (v < 0) throw InvalidArgument("bigint_to_bits: negative value");
    if (v > 0 && floor_log2(v) >= width)
        throw InvalidArgument("bigint_to_bits: value does not fit in width");
    Bits bits(width, 0);
    for (std::size_t i = 0; i < width; ++i)
        bits[width - 1 - i] = boost::multiprecision::bit_test(v, static_cast<unsigned>(i)) ? 1 : 0;
    return bits;
}

// Packs bits MSB-first into bytes; the final partial byte is zero-padded.
inline std::vector<std::uint8_t> pack_bits(const Bits& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] & 1u) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

inline Bits unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (nbits > bytes.size() * 8) throw InvalidArgument("unpack_bits: not enough bytes");
    Bits bits(nbits);
    for (std::size_t i = 0; i < nbits; ++i)
        bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    return bits;
}

}  // namespace mpdm
