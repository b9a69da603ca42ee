#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace mpdm {

namespace detail {

inline constexpr std::array<std::uint32_t, 256> make_crc32_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int bit = 0; bit < 8; ++bit) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        table[i] = c;
    }
    return table;
}

inline constexpr auto kCrc32Table = make_crc32_table();

}  // namespace detail

// CRC-32 (IEEE 802.3, reflected, init/xorout 0xFFFFFFFF).
inline std::uint32_t crc32(std::span<const std::uint8_t> data, std::uint32_t seed = 0) {
    std::uint32_t c = seed ^ 0xFFFFFFFFu;
    for (std::uint8_t byte : data) c = detail::kCrc32Table[(c ^ byte) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

}  // namespace mpdm
