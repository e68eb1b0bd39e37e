#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chc/common.hpp"

namespace chc {

// MSB-first bit sink. Bits fill each byte from the most significant position
// down; finish() pads the last byte with zero bits.
class BitWriter {
public:
    // Appends the width low-order bits of value, most significant first.
    // width in 0..64 and value < 2^width, else Errc::contract.
    void write_bits(uint64_t value, uint32_t width) {
        if (width > 64) raise(Errc::contract, "write_bits: width > 64");
        if (width < 64 && value > low_mask(width))
            raise(Errc::contract, "write_bits: value wider than width");
        m_bit_count += width;
        while (width > 0) {
            uint32_t take = 8 - m_cur_bits;
            if (take > width) take = width;
            uint32_t shift = width - take;
            uint8_t chunk = static_cast<uint8_t>((value >> shift) & low_mask(take));
            m_cur = static_cast<uint8_t>((m_cur << take) | chunk);
            m_cur_bits += take;
            width -= take;
            if (m_cur_bits == 8) {
                m_bytes.push_back(m_cur);
                m_cur = 0;
                m_cur_bits = 0;
            }
        }
    }

    uint64_t bit_count() const { return m_bit_count; }

    // Flushes the partial byte (zero padded) and hands the buffer out.
    std::vector<uint8_t> finish() {
        if (m_cur_bits > 0) {
            m_bytes.push_back(static_cast<uint8_t>(m_cur << (8 - m_cur_bits)));
            m_cur = 0;
            m_cur_bits = 0;
        }
        return std::move(m_bytes);
    }

private:
    std::vector<uint8_t> m_bytes;
    uint64_t m_bit_count = 0;
    uint8_t m_cur = 0;
    uint32_t m_cur_bits = 0;
};

// MSB-first bit source over a byte sequence with a fixed logical payload
// length. peek never advances and reads zero-valued phantom bits past the
// payload end; read requires the bits to actually exist.
class BitCursor {
public:
    BitCursor() = default;

    BitCursor(std::span<const uint8_t> bytes, uint64_t logical_len_bits)
        : m_data(bytes.data()), m_size(bytes.size()), m_len(logical_len_bits) {
        if (m_len > m_size * 8) raise(Errc::contract, "BitCursor: logical length beyond buffer");
    }

    uint64_t pos() const { return m_pos; }
    uint64_t logical_len() const { return m_len; }
    uint64_t remaining() const { return m_len - m_pos; }

    uint64_t peek_bits(uint32_t width) const {
        if (width > 64) raise(Errc::contract, "peek_bits: width > 64");
        if (width == 0) return 0;
        size_t byte = static_cast<size_t>(m_pos >> 3);
        uint32_t skip = static_cast<uint32_t>(m_pos & 7);
        uint32_t need = skip + width;
        uint32_t nbytes = (need + 7) / 8;  // at most 9
        unsigned __int128 window = 0;
        for (uint32_t i = 0; i < nbytes; ++i) {
            uint8_t b = (byte + i < m_size) ? m_data[byte + i] : 0;
            window = (window << 8) | b;
        }
        uint64_t val =
            static_cast<uint64_t>(window >> (nbytes * 8 - need)) & low_mask(width);
        uint64_t avail = m_len - m_pos;
        if (width > avail) {
            // zero the phantom tail explicitly; stored pad bits are not trusted
            uint32_t phantom = width - static_cast<uint32_t>(avail);
            val &= ~low_mask(phantom);
        }
        return val;
    }

    uint64_t read_bits(uint32_t width) {
        if (width > 64) raise(Errc::contract, "read_bits: width > 64");
        if (m_pos + width > m_len) raise(Errc::truncated, "read_bits: past end of stream");
        uint64_t val = peek_bits(width);
        m_pos += width;
        return val;
    }

private:
    const uint8_t* m_data = nullptr;
    size_t m_size = 0;
    uint64_t m_len = 0;
    uint64_t m_pos = 0;
};

}  // namespace chc
