#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace phasemark {

using cplx = std::complex<double>;

inline constexpr int kBlockDim = 8;
inline constexpr int kBlockSamples = kBlockDim * kBlockDim;
inline constexpr double kPi = 3.14159265358979323846;

enum class TransformKind { Dft, Scht };

inline const char* transform_name(TransformKind k) {
    return k == TransformKind::Dft ? "dft" : "scht";
}

/// 8x8 block of real luma samples. Values are nominally on the 0..255 scale
/// but intermediates (filter taps, inverse-transform output) may leave it.
struct SpatialBlock {
    std::array<double, kBlockSamples> px{};

    double& at(int row, int col) { return px[row * kBlockDim + col]; }
    double at(int row, int col) const { return px[row * kBlockDim + col]; }
};

/// 8x8 block of complex transform coefficients, indexed (u, v) = (row, col).
struct ComplexBlock {
    std::array<cplx, kBlockSamples> coef{};

    cplx& at(int u, int v) { return coef[u * kBlockDim + v]; }
    cplx at(int u, int v) const { return coef[u * kBlockDim + v]; }

    double magnitude(int u, int v) const { return std::abs(at(u, v)); }

    /// Phase in (-pi, pi]. A zero-magnitude coefficient has phase 0 so the
    /// value is always well defined.
    double phase(int u, int v) const { return phase_of(at(u, v)); }

    static double phase_of(cplx c) {
        if (c.real() == 0.0 && c.imag() == 0.0) return 0.0;
        double p = std::atan2(c.imag(), c.real());
        if (p <= -kPi) p = kPi;
        return p;
    }
};

/// Complex add/mult tally for one transform call. Trivial factors (+-1, +-i)
/// are realized as sign or component swaps and are not counted as
/// multiplications.
struct OpCounter {
    std::int64_t complex_adds = 0;
    std::int64_t complex_mults = 0;

    std::int64_t total() const { return complex_adds + complex_mults; }
};

}  // namespace phasemark
