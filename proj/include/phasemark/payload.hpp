#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "phasemark/block.hpp"

namespace phasemark {

inline constexpr int kLogoWidth = 44;
inline constexpr int kLogoHeight = 36;
inline constexpr int kLogoBits = kLogoWidth * kLogoHeight;  // 1584
inline constexpr int kSpreadFactor = 3;
inline constexpr int kChipCount = kLogoBits * kSpreadFactor;  // 4752

/// 36x44 binary watermark image, row-major, bit 1 = mark (black in PBM).
struct Logo {
    std::array<std::uint8_t, kLogoBits> bits{};

    std::uint8_t& at(int row, int col) { return bits[row * kLogoWidth + col]; }
    std::uint8_t at(int row, int col) const { return bits[row * kLogoWidth + col]; }
};

/// Key material. Only pn_scramble_seed affects pipeline output today:
/// block order is fixed by the low-amplitude ranking and every frame is
/// embedded, so the other two seeds are carried for interface stability.
struct KeySet {
    std::uint32_t pn_scramble_seed = 1;
    std::uint32_t block_order_seed = 0;
    std::uint32_t frame_select_seed = 0;
};

namespace detail {

// murmur3 32-bit finalizer. Spreads nearby key values apart so adjacent seeds
// do not yield correlated patterns.
inline std::uint32_t mix32(std::uint32_t x) {
    x ^= x >> 16;
    x *= 0x85EBCA6Bu;
    x ^= x >> 13;
    x *= 0xC2B2AE35u;
    x ^= x >> 16;
    return x;
}

// Marsaglia xorshift32 over the mixed seed. Word sequence is fixed by the
// shift triple (13,17,5); a seed mixing to zero maps to a fixed odd constant.
struct Xorshift32 {
    std::uint32_t state;

    explicit Xorshift32(std::uint32_t seed) : state(mix32(seed) ? mix32(seed) : 0x9E3779B9u) {}

    std::uint32_t next() {
        std::uint32_t x = state;
        x ^= x << 13;
        x ^= x >> 17;
        x ^= x << 5;
        return state = x;
    }
};

}  // namespace detail

/// Keyed pseudorandom binary pattern, 1584 bits: successive xorshift32 words
/// consumed MSB-first. Bit-identical for a given seed on every platform.
inline std::array<std::uint8_t, kLogoBits> pn_pattern(std::uint32_t seed) {
    std::array<std::uint8_t, kLogoBits> out{};
    detail::Xorshift32 gen(seed);
    std::uint32_t word = 0;
    int left = 0;
    for (auto& bit : out) {
        if (left == 0) {
            word = gen.next();
            left = 32;
        }
        bit = static_cast<std::uint8_t>((word >> 31) & 1u);
        word <<= 1;
        --left;
    }
    return out;
}

/// XOR the logo with the keyed pattern; involutive under the same key.
inline Logo scramble(const Logo& logo, const KeySet& keys) {
    const auto pn = pn_pattern(keys.pn_scramble_seed);
    Logo out;
    for (int i = 0; i < kLogoBits; ++i) out.bits[i] = logo.bits[i] ^ pn[i];
    return out;
}

inline std::array<std::uint8_t, kLogoBits> raster_serialize(const Logo& logo) {
    return logo.bits;  // storage is already row-major, row 0 first
}

inline Logo raster_deserialize(std::span<const std::uint8_t> bits) {
    if (bits.size() != kLogoBits) throw std::invalid_argument("logo bit sequence must be 1584 long");
    Logo out;
    for (int i = 0; i < kLogoBits; ++i) out.bits[i] = bits[i] ? 1 : 0;
    return out;
}

/// Encoded payload: 4752 chips of +-1, three per logo bit.
using ChipStream = std::vector<int8_t>;

/// 3x chip spreading: bit 1 (bipolar +1) -> [+1,-1,+1], bit 0 (-1) -> [-1,+1,-1].
inline ChipStream spread(std::span<const std::uint8_t> bits) {
    if (bits.size() != kLogoBits) throw std::invalid_argument("spread expects 1584 bits");
    ChipStream chips(kChipCount);
    for (int i = 0; i < kLogoBits; ++i) {
        const int8_t b = bits[i] ? 1 : -1;
        chips[3 * i + 0] = b;
        chips[3 * i + 1] = static_cast<int8_t>(-b);
        chips[3 * i + 2] = b;
    }
    return chips;
}

struct DespreadResult {
    std::array<std::uint8_t, kLogoBits> bits{};
    std::array<double, kLogoBits> confidence{};  // |correlation| / 3
};

/// Correlate each soft-value triple with [+1,-1,+1]; positive -> 1, negative
/// -> 0, exact zero ties resolve to 1.
inline DespreadResult despread(std::span<const double> soft_chips) {
    if (soft_chips.size() != kChipCount)
        throw std::invalid_argument("despread expects 4752 chip values");
    DespreadResult out;
    for (int i = 0; i < kLogoBits; ++i) {
        const double c =
            soft_chips[3 * i] - soft_chips[3 * i + 1] + soft_chips[3 * i + 2];
        out.bits[i] = c >= 0.0 ? 1 : 0;
        out.confidence[i] = std::abs(c) / 3.0;
    }
    return out;
}

inline DespreadResult despread(std::span<const int8_t> chips) {
    std::vector<double> soft(chips.begin(), chips.end());
    return despread(std::span<const double>(soft));
}

}  // namespace phasemark
