#pragma once

#include <array>
#include <span>
#include <vector>

#include "phasemark/embed.hpp"

namespace phasemark {

/// Soft BPSK decision: sin of the coefficient phase, in [-1, +1]. Positive
/// hemisphere leans chip +1, negative -1; a zero coefficient gives 0 and the
/// hard decision ties to +1.
inline double bpsk_demodulate(cplx coeff) {
    const double mag = std::abs(coeff);
    if (mag == 0.0) return 0.0;
    return coeff.imag() / mag;
}

inline int hard_chip(double soft) { return soft >= 0.0 ? 1 : -1; }

struct FrameChips {
    std::vector<double> soft;        // one value per selected block, raster order
    std::vector<int> block_indices;  // the reselected blocks
};

/// Blind per-frame read-back: reselect blocks with the embedder's statistic
/// and demodulate coefficient (1,1) of each.
inline FrameChips extract_frame(const FramePlanes& frame, const EmbedConfig& cfg) {
    const std::vector<SpatialBlock> blocks = tile_blocks(frame);
    std::vector<ComplexBlock> coeffs(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i)
        coeffs[i] = forward_transform(blocks[i], cfg.transform);

    FrameChips out;
    out.block_indices = select_blocks(coeffs, cfg.selected_blocks_per_frame, cfg.transform);
    out.soft.reserve(out.block_indices.size());
    for (int idx : out.block_indices)
        out.soft.push_back(bpsk_demodulate(coeffs[idx].at(kEmbedU, kEmbedV)));
    return out;
}

/// Slot-wise running sums of demodulated soft values across repetitions and
/// scenes. Merging is plain addition, so any accumulation order is fine.
struct SoftChipAccumulator {
    std::array<double, kChipCount> sum{};
    std::array<int, kChipCount> count{};

    void add(int slot, double soft) {
        sum[slot] += soft;
        count[slot] += 1;
    }

    /// Mean soft value per slot; slots never covered stay 0 and later resolve
    /// through the despreading tie rule.
    std::array<double, kChipCount> averaged() const {
        std::array<double, kChipCount> out{};
        for (int i = 0; i < kChipCount; ++i) out[i] = count[i] ? sum[i] / count[i] : 0.0;
        return out;
    }
};

struct ExtractionResult {
    Logo logo;
    std::array<double, kLogoBits> confidence{};  // |despread correlation| / 3
    std::array<int, kChipCount> chips_seen{};    // contributions per slot
    int scene_count = 0;
};

/// Blind whole-clip extraction: per scene, each frame feeds its chips into
/// the repetition layout; accumulated soft values are despread, descrambled
/// with the keyed PN pattern and reassembled into the 36x44 logo.
///
/// A frame byte-identical to its predecessor is a playback hold (the frame
/// dropping attack leaves exactly these); it carries no new information but
/// would double-count its source frame's chips into the wrong slots, so it
/// is skipped.
inline ExtractionResult extract_clip(const Clip& clip, const EmbedConfig& cfg) {
    if (clip.frames.empty()) throw std::invalid_argument("clip must hold at least one frame");
    const PayloadLayout layout(cfg.selected_blocks_per_frame);
    const SceneList scenes = detect_scenes(clip, cfg.scene_threshold);

    SoftChipAccumulator acc;
    for (const auto& [start, end] : scenes) {
        for (int f = start; f < end; ++f) {
            if (f > start) {
                const FramePlanes& cur = clip.frames[f];
                const FramePlanes& prev = clip.frames[f - 1];
                if (cur.y == prev.y && cur.u == prev.u && cur.v == prev.v) continue;
            }
            const auto [lo, hi] = layout.slot_range(f - start);
            FrameChips chips = extract_frame(clip.frames[f], cfg);
            for (int slot = lo; slot < hi; ++slot) acc.add(slot, chips.soft[slot - lo]);
        }
    }

    const DespreadResult despreaded = despread(std::span<const double>(acc.averaged()));

    const auto pn = pn_pattern(cfg.keys.pn_scramble_seed);
    std::array<std::uint8_t, kLogoBits> bits{};
    for (int i = 0; i < kLogoBits; ++i) bits[i] = despreaded.bits[i] ^ pn[i];

    ExtractionResult out;
    out.logo = raster_deserialize(bits);
    out.confidence = despreaded.confidence;
    out.chips_seen = acc.count;
    out.scene_count = static_cast<int>(scenes.size());
    return out;
}

}  // namespace phasemark
