#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "phasemark/payload.hpp"
#include "phasemark/transform.hpp"
#include "phasemark/video.hpp"

namespace phasemark {

/// Coefficient carrying the watermark bit, fixed by the scheme.
inline constexpr int kEmbedU = 1;
inline constexpr int kEmbedV = 1;

inline constexpr double kDefaultThresholdDft = 10.0;
inline constexpr double kDefaultThresholdScht = 13.0;
inline constexpr double kRobustThreshold = 22.0;
inline constexpr int kDefaultSelectedBlocks = 264;

struct EmbedConfig {
    TransformKind transform = TransformKind::Scht;
    double boost_threshold = kDefaultThresholdScht;
    int selected_blocks_per_frame = kDefaultSelectedBlocks;
    KeySet keys;
    double scene_threshold = kSceneCutThreshold;
};

inline double default_threshold(TransformKind kind) {
    return kind == TransformKind::Dft ? kDefaultThresholdDft : kDefaultThresholdScht;
}

/// Static chip layout: frame o of a scene carries the slot range of
/// repetition offset (o % frames_per_repetition); the whole 4752-chip stream
/// repeats cyclically for the scene's full length.
struct PayloadLayout {
    int chips_per_frame = kDefaultSelectedBlocks;
    int frames_per_repetition = (kChipCount + kDefaultSelectedBlocks - 1) / kDefaultSelectedBlocks;

    explicit PayloadLayout(int selected_per_frame = kDefaultSelectedBlocks)
        : chips_per_frame(selected_per_frame),
          frames_per_repetition((kChipCount + selected_per_frame - 1) / selected_per_frame) {
        if (selected_per_frame <= 0) throw std::invalid_argument("layout needs at least one chip per frame");
    }

    /// Half-open chip-slot range carried by scene-frame offset o.
    std::pair<int, int> slot_range(int frame_offset_in_scene) const {
        const int rep_offset = frame_offset_in_scene % frames_per_repetition;
        const int begin = rep_offset * chips_per_frame;
        return {begin, std::min(begin + chips_per_frame, kChipCount)};
    }
};

// Bins the embedder touches, per transform. For DFT that is the anchor bin
// and its conjugate mirror. For SCHT, discarding the imaginary part of the
// inverse additionally perturbs (3,3), (3,7), (7,3) and (7,7) once the block
// is re-transformed, so those are kept out of the ranking statistic too;
// otherwise the decoder could not re-derive the embedder's block set.
inline bool selection_statistic_excludes(TransformKind kind, int u, int v) {
    if (u == 0 && v == 0) return true;
    if (u == kEmbedU && v == kEmbedV) return true;
    if (u == 7 && v == 7) return true;
    if (kind == TransformKind::Scht)
        return (u == 3 && v == 3) || (u == 3 && v == 7) || (u == 7 && v == 3);
    return false;
}

inline double selection_statistic(const ComplexBlock& block, TransformKind kind) {
    double sum = 0.0;
    for (int u = 0; u < kBlockDim; ++u)
        for (int v = 0; v < kBlockDim; ++v)
            if (!selection_statistic_excludes(kind, u, v)) sum += block.magnitude(u, v);
    return sum;
}

/// Low-amplitude block selection: the n_select blocks with the smallest
/// coefficient-magnitude sum, ties broken by raster index, returned in
/// raster order.
inline std::vector<int> select_blocks(std::span<const ComplexBlock> frame_coeffs, int n_select,
                                      TransformKind kind) {
    const int total = static_cast<int>(frame_coeffs.size());
    if (n_select < 0 || n_select > total)
        throw std::invalid_argument("select_blocks: n_select exceeds block count");
    std::vector<std::pair<double, int>> ranked(total);
    for (int i = 0; i < total; ++i) ranked[i] = {selection_statistic(frame_coeffs[i], kind), i};
    std::sort(ranked.begin(), ranked.end());
    std::vector<int> chosen(n_select);
    for (int i = 0; i < n_select; ++i) chosen[i] = ranked[i].second;
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

/// Raises a coefficient below the threshold to magnitude exactly T, phase
/// preserved (a zero coefficient has phase 0 by convention).
inline cplx amplitude_boost(cplx coeff, double threshold) {
    if (threshold <= 0.0) throw std::invalid_argument("amplitude boost threshold must be positive");
    const double mag = std::abs(coeff);
    if (mag >= threshold) return coeff;
    if (mag == 0.0) return cplx(threshold, 0.0);
    return coeff * (threshold / mag);
}

/// BPSK phase map: chip +1 -> phase +pi/2, chip -1 -> -pi/2, magnitude kept.
inline cplx bpsk_modulate(cplx coeff, int chip) {
    const double mag = std::abs(coeff);
    if (mag == 0.0) throw std::invalid_argument("bpsk_modulate needs a boosted (nonzero) coefficient");
    return cplx(0.0, chip > 0 ? mag : -mag);
}

/// Boost + modulate coefficient (1,1) of the selected blocks, in raster
/// order of the selection. The DFT path repairs conjugate symmetry so the
/// inverse stays real. Exposed separately so tests and the phase attack can
/// inspect the coefficient domain.
inline void embed_into_coefficients(std::span<ComplexBlock> coeffs, std::span<const int> selected,
                                    std::span<const int8_t> chips, const EmbedConfig& cfg) {
    if (chips.size() > selected.size())
        throw std::invalid_argument("more chips than selected blocks");
    for (size_t k = 0; k < chips.size(); ++k) {
        ComplexBlock& b = coeffs[selected[k]];
        const cplx boosted = amplitude_boost(b.at(kEmbedU, kEmbedV), cfg.boost_threshold);
        b.at(kEmbedU, kEmbedV) = bpsk_modulate(boosted, chips[k]);
        if (cfg.transform == TransformKind::Dft)
            b = enforce_conjugate_symmetry(b, kEmbedU, kEmbedV);
    }
}

/// Full single-frame pipeline: tile, transform, select, modulate, inverse,
/// round and clamp. Chroma passes through untouched. A chip span shorter
/// than the selection (tail of a repetition) marks only the leading blocks;
/// a longer one is an error.
inline FramePlanes embed_frame(const FramePlanes& frame, std::span<const int8_t> chips,
                               const EmbedConfig& cfg) {
    const BlockGrid grid(frame.width, frame.height);
    if (cfg.selected_blocks_per_frame > grid.total)
        throw std::invalid_argument("selected_blocks_per_frame exceeds the frame's block count");
    if (static_cast<int>(chips.size()) > cfg.selected_blocks_per_frame)
        throw std::invalid_argument("chip count exceeds selected_blocks_per_frame");

    std::vector<SpatialBlock> blocks = tile_blocks(frame);
    std::vector<ComplexBlock> coeffs(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i)
        coeffs[i] = forward_transform(blocks[i], cfg.transform);

    const std::vector<int> selected =
        select_blocks(coeffs, cfg.selected_blocks_per_frame, cfg.transform);
    embed_into_coefficients(coeffs, selected, chips, cfg);

    FramePlanes out = frame;
    // untouched blocks keep their exact source bytes
    for (size_t k = 0; k < chips.size(); ++k)
        blocks[selected[k]] = inverse_transform(coeffs[selected[k]], cfg.transform).spatial;
    untile_blocks(blocks, out);
    return out;
}

/// Chip stream for a logo under the given keys: scramble, serialize
/// row-major, spread 3x.
inline ChipStream make_chip_stream(const Logo& logo, const KeySet& keys) {
    return spread(raster_serialize(scramble(logo, keys)));
}

/// Whole-clip embedding. Scene cuts restart the chip layout; every frame is
/// watermarked.
inline Clip embed_clip(const Clip& clip, const Logo& logo, const EmbedConfig& cfg) {
    if (clip.frames.empty()) throw std::invalid_argument("clip must hold at least one frame");
    const ChipStream chips = make_chip_stream(logo, cfg.keys);
    const PayloadLayout layout(cfg.selected_blocks_per_frame);
    const SceneList scenes = detect_scenes(clip, cfg.scene_threshold);

    Clip out;
    out.frame_rate = clip.frame_rate;
    out.frames.reserve(clip.frames.size());
    for (const auto& [start, end] : scenes) {
        for (int f = start; f < end; ++f) {
            const auto [lo, hi] = layout.slot_range(f - start);
            out.frames.push_back(embed_frame(
                clip.frames[f], std::span<const int8_t>(chips.data() + lo, hi - lo), cfg));
        }
    }
    return out;
}

}  // namespace phasemark
