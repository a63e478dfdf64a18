#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phasemark/block.hpp"

namespace phasemark {

inline std::uint8_t clamp_round_u8(double v) {
    // round half up, then clamp to the sample range
    const double r = std::floor(v + 0.5);
    if (r <= 0.0) return 0;
    if (r >= 255.0) return 255;
    return static_cast<std::uint8_t>(r);
}

/// One video frame as planar YUV 4:2:0 (I420). Width and height must be
/// multiples of 16 so luma blocks and subsampled chroma tile evenly.
struct FramePlanes {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> y;  // width * height
    std::vector<std::uint8_t> u;  // (width/2) * (height/2)
    std::vector<std::uint8_t> v;

    FramePlanes() = default;
    FramePlanes(int w, int h) : width(w), height(h) {
        if (w <= 0 || h <= 0 || w % 16 != 0 || h % 16 != 0)
            throw std::invalid_argument("frame dimensions must be positive multiples of 16");
        y.assign(static_cast<size_t>(w) * h, 0);
        u.assign(static_cast<size_t>(w / 2) * (h / 2), 128);
        v.assign(static_cast<size_t>(w / 2) * (h / 2), 128);
    }

    std::uint8_t& luma(int row, int col) { return y[static_cast<size_t>(row) * width + col]; }
    std::uint8_t luma(int row, int col) const { return y[static_cast<size_t>(row) * width + col]; }

    size_t byte_size() const { return y.size() + u.size() + v.size(); }
};

struct Clip {
    std::vector<FramePlanes> frames;
    double frame_rate = 30.0;  // metadata only

    int width() const { return frames.empty() ? 0 : frames.front().width; }
    int height() const { return frames.empty() ? 0 : frames.front().height; }
    int frame_count() const { return static_cast<int>(frames.size()); }
};

struct BlockGrid {
    int blocks_per_row = 0;  // width / 8
    int blocks_per_col = 0;  // height / 8
    int total = 0;

    BlockGrid() = default;
    BlockGrid(int width, int height)
        : blocks_per_row(width / kBlockDim),
          blocks_per_col(height / kBlockDim),
          total((width / kBlockDim) * (height / kBlockDim)) {}
};

/// Half-open [start, end) frame intervals; always partitions the clip.
using SceneList = std::vector<std::pair<int, int>>;

// ---------------------------------------------------------------------------
// raw I420 I/O

inline Clip read_yuv420(std::istream& in, int width, int height, double frame_rate = 30.0) {
    if (width <= 0 || height <= 0 || width % 16 != 0 || height % 16 != 0)
        throw std::invalid_argument("dimensions must be positive multiples of 16");
    const size_t frame_bytes = static_cast<size_t>(width) * height * 3 / 2;

    Clip clip;
    clip.frame_rate = frame_rate;
    while (true) {
        FramePlanes f(width, height);
        in.read(reinterpret_cast<char*>(f.y.data()), static_cast<std::streamsize>(f.y.size()));
        const auto got = static_cast<size_t>(in.gcount());
        if (got == 0 && in.eof()) break;
        if (got < f.y.size()) throw std::runtime_error("truncated YUV stream (luma plane)");
        in.read(reinterpret_cast<char*>(f.u.data()), static_cast<std::streamsize>(f.u.size()));
        if (static_cast<size_t>(in.gcount()) < f.u.size())
            throw std::runtime_error("truncated YUV stream (U plane)");
        in.read(reinterpret_cast<char*>(f.v.data()), static_cast<std::streamsize>(f.v.size()));
        if (static_cast<size_t>(in.gcount()) < f.v.size())
            throw std::runtime_error("truncated YUV stream (V plane)");
        clip.frames.push_back(std::move(f));
    }
    if (clip.frames.empty())
        throw std::runtime_error("YUV stream holds no complete frame of " +
                                 std::to_string(frame_bytes) + " bytes");
    return clip;
}

inline Clip read_yuv420(const std::string& path, int width, int height, double frame_rate = 30.0) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open YUV file: " + path);
    return read_yuv420(in, width, height, frame_rate);
}

inline void write_yuv420(std::ostream& out, const Clip& clip) {
    for (const auto& f : clip.frames) {
        out.write(reinterpret_cast<const char*>(f.y.data()), static_cast<std::streamsize>(f.y.size()));
        out.write(reinterpret_cast<const char*>(f.u.data()), static_cast<std::streamsize>(f.u.size()));
        out.write(reinterpret_cast<const char*>(f.v.data()), static_cast<std::streamsize>(f.v.size()));
    }
}

inline void write_yuv420(const std::string& path, const Clip& clip) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write YUV file: " + path);
    write_yuv420(out, clip);
}

// ---------------------------------------------------------------------------
// RGB <-> YUV (BT.601 full range, JFIF constants)

/// Packed 8-bit RGB image, row-major, 3 bytes per pixel.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;
};

inline FramePlanes rgb_to_yuv(const RgbImage& rgb) {
    FramePlanes f(rgb.width, rgb.height);
    std::vector<double> cb(static_cast<size_t>(rgb.width) * rgb.height);
    std::vector<double> cr(cb.size());
    for (int r = 0; r < rgb.height; ++r) {
        for (int c = 0; c < rgb.width; ++c) {
            const size_t p = (static_cast<size_t>(r) * rgb.width + c);
            const double R = rgb.data[3 * p], G = rgb.data[3 * p + 1], B = rgb.data[3 * p + 2];
            f.y[p] = clamp_round_u8(0.299 * R + 0.587 * G + 0.114 * B);
            cb[p] = 128.0 - 0.168736 * R - 0.331264 * G + 0.5 * B;
            cr[p] = 128.0 + 0.5 * R - 0.418688 * G - 0.081312 * B;
        }
    }
    // 2x2 box average for the 4:2:0 chroma planes
    const int cw = rgb.width / 2;
    for (int r = 0; r < rgb.height / 2; ++r) {
        for (int c = 0; c < cw; ++c) {
            const size_t i00 = static_cast<size_t>(2 * r) * rgb.width + 2 * c;
            const size_t i10 = i00 + rgb.width;
            f.u[static_cast<size_t>(r) * cw + c] =
                clamp_round_u8((cb[i00] + cb[i00 + 1] + cb[i10] + cb[i10 + 1]) / 4.0);
            f.v[static_cast<size_t>(r) * cw + c] =
                clamp_round_u8((cr[i00] + cr[i00 + 1] + cr[i10] + cr[i10 + 1]) / 4.0);
        }
    }
    return f;
}

namespace detail {

// center-aligned bilinear sample of a half-resolution plane
inline double chroma_sample(const std::vector<std::uint8_t>& plane, int cw, int ch, double x,
                            double y) {
    x = std::clamp(x, 0.0, cw - 1.0);
    y = std::clamp(y, 0.0, ch - 1.0);
    const int x0 = static_cast<int>(x), y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, cw - 1), y1 = std::min(y0 + 1, ch - 1);
    const double fx = x - x0, fy = y - y0;
    const double a = plane[static_cast<size_t>(y0) * cw + x0];
    const double b = plane[static_cast<size_t>(y0) * cw + x1];
    const double c = plane[static_cast<size_t>(y1) * cw + x0];
    const double d = plane[static_cast<size_t>(y1) * cw + x1];
    return a * (1 - fx) * (1 - fy) + b * fx * (1 - fy) + c * (1 - fx) * fy + d * fx * fy;
}

}  // namespace detail

inline RgbImage yuv_to_rgb(const FramePlanes& f) {
    RgbImage rgb;
    rgb.width = f.width;
    rgb.height = f.height;
    rgb.data.resize(static_cast<size_t>(f.width) * f.height * 3);
    const int cw = f.width / 2, ch = f.height / 2;
    for (int r = 0; r < f.height; ++r) {
        for (int c = 0; c < f.width; ++c) {
            const size_t p = static_cast<size_t>(r) * f.width + c;
            const double Y = f.y[p];
            const double cx = (c + 0.5) / 2.0 - 0.5, cy = (r + 0.5) / 2.0 - 0.5;
            const double Cb = detail::chroma_sample(f.u, cw, ch, cx, cy) - 128.0;
            const double Cr = detail::chroma_sample(f.v, cw, ch, cx, cy) - 128.0;
            rgb.data[3 * p] = clamp_round_u8(Y + 1.402 * Cr);
            rgb.data[3 * p + 1] = clamp_round_u8(Y - 0.344136 * Cb - 0.714136 * Cr);
            rgb.data[3 * p + 2] = clamp_round_u8(Y + 1.772 * Cb);
        }
    }
    return rgb;
}

// ---------------------------------------------------------------------------
// luma tiling

/// Raster-ordered 8x8 tiles of the luma plane (block row 0 left to right
/// first).
inline std::vector<SpatialBlock> tile_blocks(const FramePlanes& frame) {
    const BlockGrid grid(frame.width, frame.height);
    std::vector<SpatialBlock> blocks(grid.total);
    for (int br = 0; br < grid.blocks_per_col; ++br) {
        for (int bc = 0; bc < grid.blocks_per_row; ++bc) {
            SpatialBlock& b = blocks[br * grid.blocks_per_row + bc];
            for (int r = 0; r < kBlockDim; ++r)
                for (int c = 0; c < kBlockDim; ++c)
                    b.at(r, c) = frame.luma(br * kBlockDim + r, bc * kBlockDim + c);
        }
    }
    return blocks;
}

/// Exact inverse of tile_blocks; samples are rounded and clamped to 0..255.
inline void untile_blocks(std::span<const SpatialBlock> blocks, FramePlanes& frame) {
    const BlockGrid grid(frame.width, frame.height);
    if (static_cast<int>(blocks.size()) != grid.total)
        throw std::invalid_argument("block count does not match frame grid");
    for (int br = 0; br < grid.blocks_per_col; ++br)
        for (int bc = 0; bc < grid.blocks_per_row; ++bc) {
            const SpatialBlock& b = blocks[br * grid.blocks_per_row + bc];
            for (int r = 0; r < kBlockDim; ++r)
                for (int c = 0; c < kBlockDim; ++c)
                    frame.luma(br * kBlockDim + r, bc * kBlockDim + c) = clamp_round_u8(b.at(r, c));
        }
}

// ---------------------------------------------------------------------------
// scene segmentation

inline std::array<double, 64> luma_histogram64(const FramePlanes& f) {
    std::array<double, 64> h{};
    for (auto s : f.y) h[s >> 2] += 1.0;
    const double n = static_cast<double>(f.y.size());
    for (auto& v : h) v /= n;
    return h;
}

inline constexpr double kSceneCutThreshold = 0.4;

/// Declares a cut between consecutive frames when the L1 distance of their
/// 64-bin luma histograms (normalized by pixel count) exceeds the threshold.
inline SceneList detect_scenes(const Clip& clip, double threshold = kSceneCutThreshold) {
    if (clip.frames.empty()) throw std::invalid_argument("clip must hold at least one frame");
    SceneList scenes;
    int start = 0;
    std::array<double, 64> prev = luma_histogram64(clip.frames[0]);
    for (int t = 1; t < clip.frame_count(); ++t) {
        std::array<double, 64> cur = luma_histogram64(clip.frames[t]);
        double dist = 0;
        for (int i = 0; i < 64; ++i) dist += std::abs(cur[i] - prev[i]);
        if (dist > threshold) {
            scenes.emplace_back(start, t);
            start = t;
        }
        prev = cur;
    }
    scenes.emplace_back(start, clip.frame_count());
    return scenes;
}

}  // namespace phasemark
