#pragma once

#include <cstdint>
#include <exception>
#include <future>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mpdm/bits.hpp"
#include "mpdm/codebook.hpp"
#include "mpdm/crc32.hpp"
#include "mpdm/errors.hpp"

namespace mpdm {

// Framed container for shaped-amplitude blocks. Layout (all little-endian):
//   magic "MPDM" | version u16 | n u32 | k u32 | |A| u16 | c_typ |A|*u32
//   | block_count u64 | body (block_count * n bytes, one 1-based amplitude
//   index per byte) | crc32(body) u32
struct Frame {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::vector<std::uint32_t> c_typ;
    std::uint64_t blocks = 0;
    std::vector<std::uint8_t> body;

    bool matches(const MpdmCodebook& cb) const {
        if (n != static_cast<std::uint32_t>(cb.block_length())) return false;
        if (k != static_cast<std::uint32_t>(cb.input_bits())) return false;
        if (c_typ.size() != static_cast<std::size_t>(cb.alphabet_size())) return false;
        for (std::size_t i = 0; i < c_typ.size(); ++i)
            if (c_typ[i] != static_cast<std::uint32_t>(cb.typical()[i])) return false;
        return true;
    }
};

namespace detail {

inline void put_le(std::ostream& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline std::uint64_t get_le(std::istream& in, int bytes, std::size_t& offset) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw ParseError("frame truncated", offset);
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
        ++offset;
    }
    return v;
}

// Runs fn(block) over [0, blocks) on a few threads, in-order within each
// contiguous chunk. If any block throws, the exception of the lowest-numbered
// failing block is rethrown.
template <class Fn>
void parallel_blocks(std::uint64_t blocks, Fn&& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(hw, blocks ? blocks : 1));
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::vector<std::future<void>> futs;
    const std::uint64_t chunk = (blocks + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, blocks);
        if (begin >= end) break;
        futs.push_back(std::async(std::launch::async, [&fn, begin, end] {
            for (std::uint64_t b = begin; b < end; ++b) fn(b);
        }));
    }
    std::exception_ptr first;
    for (auto& f : futs) {
        try {
            f.get();
        } catch (...) {
            if (!first) first = std::current_exception();  // chunks are ordered by block
        }
    }
    if (first) std::rethrow_exception(first);
}

}  // namespace detail

inline constexpr std::uint16_t kFrameVersion = 1;

inline void write_frame(std::ostream& out, const Frame& f) {
    out.write("MPDM", 4);
    detail::put_le(out, kFrameVersion, 2);
    detail::put_le(out, f.n, 4);
    detail::put_le(out, f.k, 4);
    detail::put_le(out, f.c_typ.size(), 2);
    for (std::uint32_t c : f.c_typ) detail::put_le(out, c, 4);
    detail::put_le(out, f.blocks, 8);
    out.write(reinterpret_cast<const char*>(f.body.data()), static_cast<std::streamsize>(f.body.size()));
    detail::put_le(out, crc32(f.body), 4);
    if (!out) throw Error("write_frame: stream failure");
}

inline Frame read_frame(std::istream& in) {
    std::size_t offset = 0;
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::string(magic, 4) != "MPDM")
        throw ParseError("frame: bad magic", 0);
    offset = 4;
    const std::uint64_t version = detail::get_le(in, 2, offset);
    if (version != kFrameVersion) throw ParseError("frame: unsupported version", 4);
    Frame f;
    f.n = static_cast<std::uint32_t>(detail::get_le(in, 4, offset));
    f.k = static_cast<std::uint32_t>(detail::get_le(in, 4, offset));
    const std::uint64_t alphabet = detail::get_le(in, 2, offset);
    if (alphabet == 0 || alphabet > 255) throw ParseError("frame: bad alphabet size", offset - 2);
    f.c_typ.resize(alphabet);
    for (std::size_t i = 0; i < alphabet; ++i)
        f.c_typ[i] = static_cast<std::uint32_t>(detail::get_le(in, 4, offset));
    f.blocks = detail::get_le(in, 8, offset);
    if (f.n == 0) throw ParseError("frame: zero block length", offset);
    const std::uint64_t body_size = f.blocks * f.n;
    if (body_size > (std::uint64_t{1} << 40)) throw ParseError("frame: implausible body size", offset);
    f.body.resize(body_size);
    if (body_size > 0) {
        in.read(reinterpret_cast<char*>(f.body.data()), static_cast<std::streamsize>(body_size));
        if (static_cast<std::uint64_t>(in.gcount()) != body_size)
            throw ParseError("frame: body truncated", offset + static_cast<std::size_t>(in.gcount()));
    }
    offset += body_size;
    const std::uint32_t stored = static_cast<std::uint32_t>(detail::get_le(in, 4, offset));
    if (stored != crc32(f.body))
        throw IntegrityError("frame: body checksum mismatch", offset - 4);
    return f;
}

// Maps a packed bit payload (MSB-first) onto shaped-amplitude blocks. The
// payload must hold a whole number of k-bit words. Blocks are independent and
// processed concurrently; output ordering matches input ordering.
inline Frame encode_stream(const MpdmCodebook& cb, std::span<const std::uint8_t> payload) {
    const int k = cb.input_bits();
    const int n = cb.block_length();
    if (k == 0) throw InvalidArgument("encode_stream: codebook carries no payload bits");
    const std::uint64_t total_bits = static_cast<std::uint64_t>(payload.size()) * 8;
    if (total_bits % static_cast<std::uint64_t>(k) != 0)
        throw LengthError("encode_stream: payload is not a whole number of k-bit words");
    Frame f;
    f.n = static_cast<std::uint32_t>(n);
    f.k = static_cast<std::uint32_t>(k);
    for (int i = 0; i < cb.alphabet_size(); ++i)
        f.c_typ.push_back(static_cast<std::uint32_t>(cb.typical()[static_cast<std::size_t>(i)]));
    f.blocks = total_bits / static_cast<std::uint64_t>(k);
    f.body.resize(f.blocks * static_cast<std::uint64_t>(n));
    detail::parallel_blocks(f.blocks, [&](std::uint64_t b) {
        Bits word(static_cast<std::size_t>(k));
        const std::uint64_t bit0 = b * static_cast<std::uint64_t>(k);
        for (int i = 0; i < k; ++i) {
            const std::uint64_t bit = bit0 + static_cast<std::uint64_t>(i);
            word[static_cast<std::size_t>(i)] = (payload[bit / 8] >> (7 - bit % 8)) & 1u;
        }
        Sequence seq;
        try {
            seq = cb.encode(word);
        } catch (const Error& e) {
            throw Error("block " + std::to_string(b) + ": " + e.what());
        }
        std::copy(seq.begin(), seq.end(), f.body.begin() + static_cast<std::ptrdiff_t>(b * static_cast<std::uint64_t>(n)));
    });
    return f;
}

// Inverse of encode_stream: recovers the packed bit payload from a frame.
// The frame header must match the codebook. Per-block failures carry the
// block index.
inline std::vector<std::uint8_t> decode_stream(const MpdmCodebook& cb, const Frame& f) {
    if (!f.matches(cb)) throw ParseError("decode_stream: frame header does not match codebook");
    const int k = cb.input_bits();
    const int n = cb.block_length();
    std::vector<Bits> words(f.blocks);
    detail::parallel_blocks(f.blocks, [&](std::uint64_t b) {
        Sequence seq(f.body.begin() + static_cast<std::ptrdiff_t>(b * static_cast<std::uint64_t>(n)),
                     f.body.begin() + static_cast<std::ptrdiff_t>((b + 1) * static_cast<std::uint64_t>(n)));
        try {
            words[b] = cb.decode(seq);
        } catch (const UnknownComposition& e) {
            throw UnknownComposition("block " + std::to_string(b) + ": " + e.what());
        } catch (const UnaddressableSequence& e) {
            throw UnaddressableSequence("block " + std::to_string(b) + ": " + e.what());
        } catch (const Error& e) {
            throw Error("block " + std::to_string(b) + ": " + e.what());
        }
    });
    const std::uint64_t total_bits = f.blocks * static_cast<std::uint64_t>(k);
    std::vector<std::uint8_t> out((total_bits + 7) / 8, 0);
    for (std::uint64_t b = 0; b < f.blocks; ++b)
        for (int i = 0; i < k; ++i)
            if (words[b][static_cast<std::size_t>(i)]) {
                const std::uint64_t bit = b * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(i);
                out[bit / 8] |= static_cast<std::uint8_t>(0x80u >> (bit % 8));
            }
    return out;
}

}  // namespace mpdm
