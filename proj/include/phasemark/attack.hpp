#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasemark/embed.hpp"
#include "phasemark/video.hpp"

namespace phasemark {

enum class AttackKind {
    None,
    Resize,
    Rotate90RoundTrip,
    CropQuarter,
    CropCenterKeep,
    Paint,
    GaussianLowpass,
    Sharpen,
    GaussianNoise,
    SaltPepper,
    PhasePerturb,
    HistEq,
    IntraCompress,
    FrameDrop,
    FrameAverage,
    FrameSwap,
    External,
};

/// One parameterized attack. Every attack is a pure function of
/// (clip, spec): the same spec and seed give a byte-identical result.
struct AttackSpec {
    AttackKind kind = AttackKind::None;
    double density = 0.01;              // salt&pepper fraction of pixels hit
    double sigma = 0.01;                // Gaussian noise std on the [0,1] scale
    double mean = kPi / 4;              // phase perturbation mean (radians)
    double variance = 0.01;             // phase perturbation variance
    int quality = 100;                  // intra-frame compression quality 20..100
    double fraction = 0.6;              // dropped / swapped frame fraction
    int window = 3;                     // frame averaging window (odd)
    TransformKind transform = TransformKind::Scht;  // phase perturbation domain
    std::uint64_t rng_seed = 1;
    std::string external_path;          // pre-attacked clip for kind=external
};

namespace detail {

struct AttackRng {
    std::uint64_t state;
    bool have_spare = false;
    double spare = 0.0;

    explicit AttackRng(std::uint64_t seed) : state(seed ? seed : 0x9E3779B97F4A7C15ull) {}

    std::uint64_t next_u64() {
        std::uint64_t x = state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return state = x;
    }

    double uniform01() {  // in (0, 1]
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double gaussian(double mu, double sd) {
        if (have_spare) {
            have_spare = false;
            return mu + sd * spare;
        }
        const double u1 = uniform01(), u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare = r * std::sin(2.0 * kPi * u2);
        have_spare = true;
        return mu + sd * r * std::cos(2.0 * kPi * u2);
    }
};

inline double bilinear_u8(const std::vector<std::uint8_t>& plane, int w, int h, double x,
                          double y) {
    x = std::clamp(x, 0.0, w - 1.0);
    y = std::clamp(y, 0.0, h - 1.0);
    const int x0 = static_cast<int>(x), y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
    const double fx = x - x0, fy = y - y0;
    const double a = plane[static_cast<size_t>(y0) * w + x0];
    const double b = plane[static_cast<size_t>(y0) * w + x1];
    const double c = plane[static_cast<size_t>(y1) * w + x0];
    const double d = plane[static_cast<size_t>(y1) * w + x1];
    return a * (1 - fx) * (1 - fy) + b * fx * (1 - fy) + c * (1 - fx) * fy + d * fx * fy;
}

inline std::vector<std::uint8_t> resize_half_and_back(const std::vector<std::uint8_t>& plane,
                                                      int w, int h) {
    const int hw = w / 2, hh = h / 2;
    std::vector<double> half(static_cast<size_t>(hw) * hh);
    for (int r = 0; r < hh; ++r)
        for (int c = 0; c < hw; ++c) {
            const size_t i = static_cast<size_t>(2 * r) * w + 2 * c;
            half[static_cast<size_t>(r) * hw + c] =
                (plane[i] + plane[i + 1] + plane[i + w] + plane[i + w + 1]) / 4.0;
        }
    std::vector<std::uint8_t> out(plane.size());
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const double sx = std::clamp((c + 0.5) / 2.0 - 0.5, 0.0, hw - 1.0);
            const double sy = std::clamp((r + 0.5) / 2.0 - 0.5, 0.0, hh - 1.0);
            const int x0 = static_cast<int>(sx), y0 = static_cast<int>(sy);
            const int x1 = std::min(x0 + 1, hw - 1), y1 = std::min(y0 + 1, hh - 1);
            const double fx = sx - x0, fy = sy - y0;
            const double v = half[static_cast<size_t>(y0) * hw + x0] * (1 - fx) * (1 - fy) +
                             half[static_cast<size_t>(y0) * hw + x1] * fx * (1 - fy) +
                             half[static_cast<size_t>(y1) * hw + x0] * (1 - fx) * fy +
                             half[static_cast<size_t>(y1) * hw + x1] * fx * fy;
            out[static_cast<size_t>(r) * w + c] = clamp_round_u8(v);
        }
    return out;
}

/// 3x3 rotationally symmetric Gaussian, normalized to unit sum.
inline std::array<double, 9> gaussian3x3(double sigma) {
    std::array<double, 9> k{};
    double sum = 0;
    for (int r = -1; r <= 1; ++r)
        for (int c = -1; c <= 1; ++c) {
            const double v = std::exp(-(r * r + c * c) / (2.0 * sigma * sigma));
            k[(r + 1) * 3 + (c + 1)] = v;
            sum += v;
        }
    for (auto& v : k) v /= sum;
    return k;
}

inline std::vector<double> convolve3x3_replicate(const std::vector<std::uint8_t>& plane, int w,
                                                 int h, const std::array<double, 9>& kernel) {
    std::vector<double> out(plane.size());
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = std::clamp(r + dr, 0, h - 1);
                    const int cc = std::clamp(c + dc, 0, w - 1);
                    acc += kernel[(dr + 1) * 3 + (dc + 1)] * plane[static_cast<size_t>(rr) * w + cc];
                }
            out[static_cast<size_t>(r) * w + c] = acc;
        }
    return out;
}

// JPEG Annex K luminance quantization table.
inline constexpr std::array<int, 64> kJpegLumaQuant = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

inline std::array<int, 64> scaled_quant_table(int quality) {
    quality = std::clamp(quality, 1, 100);
    const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    std::array<int, 64> tab{};
    for (int i = 0; i < 64; ++i)
        tab[i] = std::clamp((kJpegLumaQuant[i] * scale + 50) / 100, 1, 255);
    return tab;
}

struct Dct8Tables {
    double cos_tab[8][8];
    double alpha[8];

    Dct8Tables() {
        for (int k = 0; k < 8; ++k) {
            alpha[k] = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int n = 0; n < 8; ++n)
                cos_tab[k][n] = std::cos((2 * n + 1) * k * kPi / 16.0);
        }
    }
};

inline const Dct8Tables& dct_tables() {
    static const Dct8Tables t;
    return t;
}

inline void dct8_rows(double (&b)[8][8], bool inverse) {
    const auto& t = dct_tables();
    for (int r = 0; r < 8; ++r) {
        double tmp[8];
        for (int k = 0; k < 8; ++k) {
            double acc = 0;
            for (int n = 0; n < 8; ++n)
                acc += inverse ? t.alpha[n] * b[r][n] * t.cos_tab[n][k]
                               : b[r][n] * t.cos_tab[k][n];
            tmp[k] = inverse ? acc : t.alpha[k] * acc;
        }
        for (int k = 0; k < 8; ++k) b[r][k] = tmp[k];
    }
}

inline void dct8_cols(double (&b)[8][8], bool inverse) {
    const auto& t = dct_tables();
    for (int c = 0; c < 8; ++c) {
        double tmp[8];
        for (int k = 0; k < 8; ++k) {
            double acc = 0;
            for (int n = 0; n < 8; ++n)
                acc += inverse ? t.alpha[n] * b[n][c] * t.cos_tab[n][k]
                               : b[n][c] * t.cos_tab[k][n];
            tmp[k] = inverse ? acc : t.alpha[k] * acc;
        }
        for (int k = 0; k < 8; ++k) b[k][c] = tmp[k];
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// spatial attacks

/// Bilinear downscale of every plane by 2, bilinear upscale back (a).
inline Clip attack_resize(const Clip& clip) {
    Clip out;
    out.frame_rate = clip.frame_rate;
    for (const auto& f : clip.frames) {
        FramePlanes g(f.width, f.height);
        g.y = detail::resize_half_and_back(f.y, f.width, f.height);
        g.u = detail::resize_half_and_back(f.u, f.width / 2, f.height / 2);
        g.v = detail::resize_half_and_back(f.v, f.width / 2, f.height / 2);
        out.frames.push_back(std::move(g));
    }
    return out;
}

namespace detail {

inline std::vector<std::uint8_t> rotate90_cw(const std::vector<std::uint8_t>& plane, int w,
                                             int h) {
    std::vector<std::uint8_t> out(plane.size());  // rotated plane is h wide, w tall
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            out[static_cast<size_t>(c) * h + (h - 1 - r)] = plane[static_cast<size_t>(r) * w + c];
    return out;
}

inline std::vector<std::uint8_t> rotate90_ccw(const std::vector<std::uint8_t>& plane, int w,
                                              int h) {
    std::vector<std::uint8_t> out(plane.size());
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            out[static_cast<size_t>(w - 1 - c) * h + r] = plane[static_cast<size_t>(r) * w + c];
    return out;
}

}  // namespace detail

/// 90 degrees clockwise then counterclockwise (b); lossless by construction.
inline Clip attack_rotate90_roundtrip(const Clip& clip) {
    Clip out;
    out.frame_rate = clip.frame_rate;
    for (const auto& f : clip.frames) {
        FramePlanes g(f.width, f.height);
        // after CW the plane is (h x w); rotate back with swapped dimensions
        g.y = detail::rotate90_ccw(detail::rotate90_cw(f.y, f.width, f.height), f.height, f.width);
        g.u = detail::rotate90_ccw(detail::rotate90_cw(f.u, f.width / 2, f.height / 2),
                                   f.height / 2, f.width / 2);
        g.v = detail::rotate90_ccw(detail::rotate90_cw(f.v, f.width / 2, f.height / 2),
                                   f.height / 2, f.width / 2);
        out.frames.push_back(std::move(g));
    }
    return out;
}

namespace detail {

inline void fill_gray_region(FramePlanes& f, int x0, int y0, int x1, int y1) {
    for (int r = y0; r < y1; ++r)
        for (int c = x0; c < x1; ++c) f.y[static_cast<size_t>(r) * f.width + c] = 128;
    const int cw = f.width / 2;
    for (int r = y0 / 2; r < y1 / 2; ++r)
        for (int c = x0 / 2; c < x1 / 2; ++c) {
            f.u[static_cast<size_t>(r) * cw + c] = 128;
            f.v[static_cast<size_t>(r) * cw + c] = 128;
        }
}

}  // namespace detail

/// Top-left quarter of every frame replaced by mid-gray (c). Frame geometry
/// is kept so the blind decoder still sees full frames.
inline Clip attack_crop_quarter(const Clip& clip) {
    Clip out = clip;
    for (auto& f : out.frames) detail::fill_gray_region(f, 0, 0, f.width / 2, f.height / 2);
    return out;
}

/// Everything but the central half-size window replaced by mid-gray (d).
inline Clip attack_crop_center_keep(const Clip& clip) {
    Clip out = clip;
    for (auto& f : out.frames) {
        const int x0 = f.width / 4, y0 = f.height / 4;
        detail::fill_gray_region(f, 0, 0, f.width, y0);                       // top
        detail::fill_gray_region(f, 0, y0 + f.height / 2, f.width, f.height); // bottom
        detail::fill_gray_region(f, 0, y0, x0, y0 + f.height / 2);            // left
        detail::fill_gray_region(f, x0 + f.width / 2, y0, f.width, y0 + f.height / 2);
    }
    return out;
}

inline constexpr int kPaintBarRows[3] = {24, 64, 104};
inline constexpr int kPaintBarHeight = 8;

/// Three full-width black bars, 8 rows tall, at rows 24, 64 and 104 (e).
inline Clip attack_paint(const Clip& clip) {
    Clip out = clip;
    for (auto& f : out.frames) {
        const int cw = f.width / 2;
        for (int bar : kPaintBarRows) {
            if (bar + kPaintBarHeight > f.height) continue;
            for (int r = bar; r < bar + kPaintBarHeight; ++r)
                for (int c = 0; c < f.width; ++c) f.y[static_cast<size_t>(r) * f.width + c] = 0;
            for (int r = bar / 2; r < (bar + kPaintBarHeight) / 2; ++r)
                for (int c = 0; c < cw; ++c) {
                    f.u[static_cast<size_t>(r) * cw + c] = 128;
                    f.v[static_cast<size_t>(r) * cw + c] = 128;
                }
        }
    }
    return out;
}

inline constexpr double kLowpassSigma = 1.4;

/// 3x3 Gaussian low-pass, sigma 1.4, replicate borders, luma only (f).
inline Clip attack_gaussian_lowpass(const Clip& clip) {
    const auto kernel = detail::gaussian3x3(kLowpassSigma);
    Clip out = clip;
    for (auto& f : out.frames) {
        auto blurred = detail::convolve3x3_replicate(f.y, f.width, f.height, kernel);
        for (size_t i = 0; i < f.y.size(); ++i) f.y[i] = clamp_round_u8(blurred[i]);
    }
    return out;
}

/// Unsharp mask with amount 1.0 on the same Gaussian base (g).
inline Clip attack_sharpen(const Clip& clip) {
    const auto kernel = detail::gaussian3x3(kLowpassSigma);
    Clip out = clip;
    for (auto& f : out.frames) {
        auto blurred = detail::convolve3x3_replicate(f.y, f.width, f.height, kernel);
        for (size_t i = 0; i < f.y.size(); ++i)
            f.y[i] = clamp_round_u8(2.0 * f.y[i] - blurred[i]);
    }
    return out;
}

/// Additive Gaussian noise, sigma on the normalized [0,1] scale (h).
inline Clip attack_gaussian_noise(const Clip& clip, double sigma_normalized,
                                  std::uint64_t seed) {
    detail::AttackRng rng(seed);
    const double sd = sigma_normalized * 255.0;
    Clip out = clip;
    for (auto& f : out.frames)
        for (auto& s : f.y) s = clamp_round_u8(s + rng.gaussian(0.0, sd));
    return out;
}

/// Salt & pepper on the luma plane: `density` of pixels forced to 0 or 255,
/// half each on average (i).
inline Clip attack_salt_pepper(const Clip& clip, double density, std::uint64_t seed) {
    detail::AttackRng rng(seed);
    Clip out = clip;
    for (auto& f : out.frames)
        for (auto& s : f.y) {
            const double u = rng.uniform01();
            if (u < density) s = (u < density / 2.0) ? 0 : 255;
        }
    return out;
}

/// Adds N(mean, variance) noise to the phase of coefficient (1,1) of every
/// 8x8 luma block in the given transform domain (j). The DFT path keeps the
/// spectrum conjugate-symmetric.
inline Clip attack_phase_perturb(const Clip& clip, TransformKind kind, double mean,
                                 double variance, std::uint64_t seed) {
    detail::AttackRng rng(seed);
    const double sd = std::sqrt(variance);
    Clip out;
    out.frame_rate = clip.frame_rate;
    for (const auto& f : clip.frames) {
        std::vector<SpatialBlock> blocks = tile_blocks(f);
        for (auto& b : blocks) {
            ComplexBlock coeffs = forward_transform(b, kind);
            const cplx c = coeffs.at(kEmbedU, kEmbedV);
            const double mag = std::abs(c);
            const double angle = ComplexBlock::phase_of(c) + rng.gaussian(mean, sd);
            coeffs.at(kEmbedU, kEmbedV) = std::polar(mag, angle);
            if (kind == TransformKind::Dft)
                coeffs = enforce_conjugate_symmetry(coeffs, kEmbedU, kEmbedV);
            b = inverse_transform(coeffs, kind).spatial;
        }
        FramePlanes g = f;
        untile_blocks(blocks, g);
        out.frames.push_back(std::move(g));
    }
    return out;
}

/// Classic 256-bin luma histogram equalization, per frame (k).
inline Clip attack_histeq(const Clip& clip) {
    Clip out = clip;
    for (auto& f : out.frames) {
        std::array<std::int64_t, 256> hist{};
        for (auto s : f.y) ++hist[s];
        std::array<std::int64_t, 256> cdf{};
        std::int64_t run = 0;
        for (int v = 0; v < 256; ++v) {
            run += hist[v];
            cdf[v] = run;
        }
        std::int64_t cdf_min = 0;
        for (int v = 0; v < 256; ++v)
            if (hist[v]) {
                cdf_min = cdf[v];
                break;
            }
        const std::int64_t total = static_cast<std::int64_t>(f.y.size());
        if (total == cdf_min) continue;  // constant frame maps to itself
        std::array<std::uint8_t, 256> lut{};
        for (int v = 0; v < 256; ++v) {
            const double t = 255.0 * static_cast<double>(cdf[v] - cdf_min) /
                             static_cast<double>(total - cdf_min);
            lut[v] = clamp_round_u8(t);
        }
        for (auto& s : f.y) s = lut[s];
    }
    return out;
}

/// Intra-frame compression model (l): 8x8 DCT of each luma block, JPEG-style
/// quantization at the given quality, dequantize, inverse DCT. Quality 100
/// reduces to coefficient rounding. Real codecs can be tested through the
/// external-clip hook instead.
inline Clip attack_intra_compress(const Clip& clip, int quality) {
    if (quality < 1 || quality > 100)
        throw std::invalid_argument("intra_compress quality must be 1..100");
    const std::array<int, 64> quant = detail::scaled_quant_table(quality);
    Clip out = clip;
    for (auto& f : out.frames) {
        std::vector<SpatialBlock> blocks = tile_blocks(f);
        for (auto& blk : blocks) {
            double b[8][8];
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c) b[r][c] = blk.at(r, c) - 128.0;
            detail::dct8_rows(b, false);
            detail::dct8_cols(b, false);
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c) {
                    const int q = quant[r * 8 + c];
                    b[r][c] = std::floor(b[r][c] / q + 0.5) * q;
                }
            detail::dct8_cols(b, true);
            detail::dct8_rows(b, true);
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c) blk.at(r, c) = b[r][c] + 128.0;
        }
        untile_blocks(blocks, f);
    }
    return out;
}

// ---------------------------------------------------------------------------
// temporal attacks

/// Frame dropping (m): `fraction` of the frames (never the first) are
/// replaced by the nearest earlier surviving frame, keeping clip length and
/// layout alignment.
inline Clip attack_frame_drop(const Clip& clip, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction >= 1.0)
        throw std::invalid_argument("drop fraction must be in [0, 1)");
    const int n = clip.frame_count();
    const int k = std::min(static_cast<int>(std::floor(fraction * n + 0.5)), n - 1);
    std::vector<int> order(n - 1);
    std::iota(order.begin(), order.end(), 1);
    detail::AttackRng rng(seed);
    for (size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.next_u64() % i]);
    std::vector<bool> dropped(n, false);
    for (int i = 0; i < k; ++i) dropped[order[i]] = true;

    Clip out;
    out.frame_rate = clip.frame_rate;
    out.frames.reserve(n);
    int last_kept = 0;
    for (int f = 0; f < n; ++f) {
        if (!dropped[f]) last_kept = f;
        out.frames.push_back(clip.frames[dropped[f] ? last_kept : f]);
    }
    return out;
}

/// Frame averaging (n): every frame becomes the mean of a centered window
/// (shrunk at the clip edges) taken over the original frames.
inline Clip attack_frame_average(const Clip& clip, int window) {
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("averaging window must be odd and positive");
    const int n = clip.frame_count();
    const int half = window / 2;
    Clip out;
    out.frame_rate = clip.frame_rate;
    for (int f = 0; f < n; ++f) {
        const int lo = std::max(0, f - half), hi = std::min(n - 1, f + half);
        const int span = hi - lo + 1;
        FramePlanes g(clip.width(), clip.height());
        std::vector<double> acc_y(g.y.size(), 0.0), acc_u(g.u.size(), 0.0), acc_v(g.v.size(), 0.0);
        for (int s = lo; s <= hi; ++s) {
            const FramePlanes& src = clip.frames[s];
            for (size_t i = 0; i < acc_y.size(); ++i) acc_y[i] += src.y[i];
            for (size_t i = 0; i < acc_u.size(); ++i) acc_u[i] += src.u[i];
            for (size_t i = 0; i < acc_v.size(); ++i) acc_v[i] += src.v[i];
        }
        for (size_t i = 0; i < acc_y.size(); ++i) g.y[i] = clamp_round_u8(acc_y[i] / span);
        for (size_t i = 0; i < acc_u.size(); ++i) g.u[i] = clamp_round_u8(acc_u[i] / span);
        for (size_t i = 0; i < acc_v.size(); ++i) g.v[i] = clamp_round_u8(acc_v[i] / span);
        out.frames.push_back(std::move(g));
    }
    return out;
}

/// Frame swapping (o): disjoint adjacent pairs are exchanged until
/// `fraction` of the frames took part.
inline Clip attack_frame_swap(const Clip& clip, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0)
        throw std::invalid_argument("swap fraction must be in [0, 1]");
    const int n = clip.frame_count();
    const int want_pairs = static_cast<int>(std::floor(fraction * n / 2.0 + 0.5));
    std::vector<int> starts(std::max(0, n - 1));
    std::iota(starts.begin(), starts.end(), 0);
    detail::AttackRng rng(seed);
    for (size_t i = starts.size(); i > 1; --i)
        std::swap(starts[i - 1], starts[rng.next_u64() % i]);

    Clip out = clip;
    std::vector<bool> used(n, false);
    int pairs = 0;
    for (int s : starts) {
        if (pairs == want_pairs) break;
        if (used[s] || used[s + 1]) continue;
        std::swap(out.frames[s], out.frames[s + 1]);
        used[s] = used[s + 1] = true;
        ++pairs;
    }
    return out;
}

// ---------------------------------------------------------------------------
// dispatch and plain-text spec form

inline const char* attack_name(AttackKind k) {
    switch (k) {
        case AttackKind::None: return "none";
        case AttackKind::Resize: return "resize";
        case AttackKind::Rotate90RoundTrip: return "rotate90";
        case AttackKind::CropQuarter: return "crop_quarter";
        case AttackKind::CropCenterKeep: return "crop_center";
        case AttackKind::Paint: return "paint";
        case AttackKind::GaussianLowpass: return "lowpass";
        case AttackKind::Sharpen: return "sharpen";
        case AttackKind::GaussianNoise: return "gaussian_noise";
        case AttackKind::SaltPepper: return "salt_pepper";
        case AttackKind::PhasePerturb: return "phase_perturb";
        case AttackKind::HistEq: return "histeq";
        case AttackKind::IntraCompress: return "intra_compress";
        case AttackKind::FrameDrop: return "frame_drop";
        case AttackKind::FrameAverage: return "frame_average";
        case AttackKind::FrameSwap: return "frame_swap";
        case AttackKind::External: return "external";
    }
    return "none";
}

inline AttackKind attack_kind_from_name(const std::string& name) {
    static const std::map<std::string, AttackKind> kNames = {
        {"none", AttackKind::None},
        {"resize", AttackKind::Resize},
        {"rotate90", AttackKind::Rotate90RoundTrip},
        {"crop_quarter", AttackKind::CropQuarter},
        {"crop_center", AttackKind::CropCenterKeep},
        {"paint", AttackKind::Paint},
        {"lowpass", AttackKind::GaussianLowpass},
        {"sharpen", AttackKind::Sharpen},
        {"gaussian_noise", AttackKind::GaussianNoise},
        {"salt_pepper", AttackKind::SaltPepper},
        {"phase_perturb", AttackKind::PhasePerturb},
        {"histeq", AttackKind::HistEq},
        {"intra_compress", AttackKind::IntraCompress},
        {"frame_drop", AttackKind::FrameDrop},
        {"frame_average", AttackKind::FrameAverage},
        {"frame_swap", AttackKind::FrameSwap},
        {"external", AttackKind::External},
    };
    auto it = kNames.find(name);
    if (it == kNames.end()) throw std::invalid_argument("unknown attack: " + name);
    return it->second;
}

/// Parameters relevant to the attack, as space-separated key=value text.
inline std::string format_attack_params(const AttackSpec& s) {
    std::ostringstream os;
    switch (s.kind) {
        case AttackKind::GaussianNoise: os << "sigma=" << s.sigma << " seed=" << s.rng_seed; break;
        case AttackKind::SaltPepper: os << "density=" << s.density << " seed=" << s.rng_seed; break;
        case AttackKind::PhasePerturb:
            os << "transform=" << transform_name(s.transform) << " mean=" << s.mean
               << " variance=" << s.variance << " seed=" << s.rng_seed;
            break;
        case AttackKind::IntraCompress: os << "quality=" << s.quality; break;
        case AttackKind::FrameDrop:
        case AttackKind::FrameSwap: os << "fraction=" << s.fraction << " seed=" << s.rng_seed; break;
        case AttackKind::FrameAverage: os << "window=" << s.window; break;
        case AttackKind::External: os << "file=" << s.external_path; break;
        default: break;
    }
    return os.str();
}

inline std::string format_attack_spec(const AttackSpec& s) {
    std::string out = std::string("kind=") + attack_name(s.kind);
    const std::string params = format_attack_params(s);
    if (!params.empty()) out += " " + params;
    return out;
}

/// Parses whitespace-separated key=value tokens; `kind=` is mandatory.
inline AttackSpec parse_attack_spec(const std::string& text) {
    AttackSpec spec;
    bool have_kind = false;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("attack spec token is not key=value: " + token);
        const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
        if (key == "kind") {
            spec.kind = attack_kind_from_name(value);
            have_kind = true;
        } else if (key == "density") {
            spec.density = std::stod(value);
        } else if (key == "sigma") {
            spec.sigma = std::stod(value);
        } else if (key == "mean") {
            spec.mean = std::stod(value);
        } else if (key == "variance") {
            spec.variance = std::stod(value);
        } else if (key == "quality") {
            spec.quality = std::stoi(value);
        } else if (key == "fraction") {
            spec.fraction = std::stod(value);
        } else if (key == "window") {
            spec.window = std::stoi(value);
        } else if (key == "seed") {
            spec.rng_seed = std::stoull(value);
        } else if (key == "transform") {
            spec.transform = value == "dft" ? TransformKind::Dft : TransformKind::Scht;
        } else if (key == "file") {
            spec.external_path = value;
        } else {
            throw std::invalid_argument("unknown attack spec key: " + key);
        }
    }
    if (!have_kind) throw std::invalid_argument("attack spec needs kind=<name>");
    return spec;
}

inline Clip apply_attack(const Clip& clip, const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::None: return clip;
        case AttackKind::Resize: return attack_resize(clip);
        case AttackKind::Rotate90RoundTrip: return attack_rotate90_roundtrip(clip);
        case AttackKind::CropQuarter: return attack_crop_quarter(clip);
        case AttackKind::CropCenterKeep: return attack_crop_center_keep(clip);
        case AttackKind::Paint: return attack_paint(clip);
        case AttackKind::GaussianLowpass: return attack_gaussian_lowpass(clip);
        case AttackKind::Sharpen: return attack_sharpen(clip);
        case AttackKind::GaussianNoise:
            return attack_gaussian_noise(clip, spec.sigma, spec.rng_seed);
        case AttackKind::SaltPepper: return attack_salt_pepper(clip, spec.density, spec.rng_seed);
        case AttackKind::PhasePerturb:
            return attack_phase_perturb(clip, spec.transform, spec.mean, spec.variance,
                                        spec.rng_seed);
        case AttackKind::HistEq: return attack_histeq(clip);
        case AttackKind::IntraCompress: return attack_intra_compress(clip, spec.quality);
        case AttackKind::FrameDrop: return attack_frame_drop(clip, spec.fraction, spec.rng_seed);
        case AttackKind::FrameAverage: return attack_frame_average(clip, spec.window);
        case AttackKind::FrameSwap: return attack_frame_swap(clip, spec.fraction, spec.rng_seed);
        case AttackKind::External: {
            Clip ext = read_yuv420(spec.external_path, clip.width(), clip.height());
            if (ext.frame_count() != clip.frame_count())
                throw std::runtime_error("external clip frame count differs from input");
            return ext;
        }
    }
    throw std::logic_error("unhandled attack kind");
}

}  // namespace phasemark
