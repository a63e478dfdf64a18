#pragma once

#include <cmath>
#include <stdexcept>

#include "phasemark/block.hpp"

namespace phasemark {

/// Result of an inverse transform: the real part of the spatial-domain block
/// plus the largest imaginary component that was discarded. For a
/// conjugate-symmetric DFT spectrum the residue is numerical noise (< 1e-9);
/// an asymmetric spectrum is flagged, not rejected.
struct InverseResult {
    SpatialBlock spatial;
    double max_imag_residue = 0.0;
    bool symmetry_warning = false;
};

inline constexpr double kSymmetryWarnThreshold = 1e-6;

namespace detail {

// Radix-2 DIT butterfly for one 8-point pass. 24 complex additions and
// 2 complex multiplications; twiddles 1 and -i are sign/component swaps.
// sign = -1 forward, +1 inverse (inverse does not scale here).
inline void fft8_pass(cplx* a, int stride, int sign, OpCounter* ops) {
    const cplx x0 = a[0 * stride], x1 = a[1 * stride], x2 = a[2 * stride],
               x3 = a[3 * stride], x4 = a[4 * stride], x5 = a[5 * stride],
               x6 = a[6 * stride], x7 = a[7 * stride];

    auto mul_j = [sign](cplx z) {  // z * (sign*i)
        return sign > 0 ? cplx(-z.imag(), z.real()) : cplx(z.imag(), -z.real());
    };

    const cplx t0 = x0 + x4, t1 = x0 - x4;
    const cplx t2 = x2 + x6, t3 = x2 - x6;
    const cplx t4 = x1 + x5, t5 = x1 - x5;
    const cplx t6 = x3 + x7, t7 = x3 - x7;
    if (ops) ops->complex_adds += 8;

    const cplx jt3 = mul_j(t3), jt7 = mul_j(t7);
    const cplx e0 = t0 + t2, e2 = t0 - t2;
    const cplx e1 = t1 + jt3, e3 = t1 - jt3;
    const cplx o0 = t4 + t6, o2 = t4 - t6;
    const cplx o1 = t5 + jt7, o3 = t5 - jt7;
    if (ops) ops->complex_adds += 8;

    constexpr double r = 0.70710678118654752440;  // 1/sqrt(2)
    const cplx w1(r, sign * r), w3(-r, sign * r);
    const cplx w1o1 = w1 * o1, w3o3 = w3 * o3, jo2 = mul_j(o2);
    if (ops) ops->complex_mults += 2;

    a[0 * stride] = e0 + o0;
    a[4 * stride] = e0 - o0;
    a[1 * stride] = e1 + w1o1;
    a[5 * stride] = e1 - w1o1;
    a[2 * stride] = e2 + jo2;
    a[6 * stride] = e2 - jo2;
    a[3 * stride] = e3 + w3o3;
    a[7 * stride] = e3 - w3o3;
    if (ops) ops->complex_adds += 8;
}

inline void fft2d(ComplexBlock& b, int sign, OpCounter* ops) {
    for (int r = 0; r < kBlockDim; ++r) fft8_pass(&b.coef[r * kBlockDim], 1, sign, ops);
    for (int c = 0; c < kBlockDim; ++c) fft8_pass(&b.coef[c], kBlockDim, sign, ops);
}

}  // namespace detail

/// Forward 2D DFT, unnormalized (the inverse carries the 1/64 factor).
/// 384 complex additions + 32 complex multiplications per block.
inline ComplexBlock dft2_forward(const SpatialBlock& block, OpCounter* ops = nullptr) {
    ComplexBlock out;
    for (int i = 0; i < kBlockSamples; ++i) out.coef[i] = cplx(block.px[i], 0.0);
    detail::fft2d(out, -1, ops);
    return out;
}

/// Inverse 2D DFT; returns the real part and reports the discarded imaginary
/// residue (symmetry_warning when it reaches 1e-6).
inline InverseResult dft2_inverse(const ComplexBlock& coeffs, OpCounter* ops = nullptr) {
    ComplexBlock work = coeffs;
    detail::fft2d(work, +1, ops);
    InverseResult out;
    for (int i = 0; i < kBlockSamples; ++i) {
        const cplx v = work.coef[i] / 64.0;
        out.spatial.px[i] = v.real();
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(v.imag()));
    }
    out.symmetry_warning = out.max_imag_residue >= kSymmetryWarnThreshold;
    return out;
}

inline bool is_self_conjugate_bin(int u, int v) {
    return (8 - u) % 8 == u && (8 - v) % 8 == v;
}

/// Copies conj(coeffs(u,v)) into the mirror bin ((8-u)%8, (8-v)%8) so a real
/// inverse exists after the anchor bin was rewritten. Self-conjugate bins
/// ((0,0), (0,4), (4,0), (4,4)) cannot carry an arbitrary phase on a real
/// signal and are rejected.
inline ComplexBlock enforce_conjugate_symmetry(const ComplexBlock& coeffs, int u, int v) {
    if (u < 0 || u >= kBlockDim || v < 0 || v >= kBlockDim)
        throw std::invalid_argument("conjugate symmetry anchor out of range");
    if (is_self_conjugate_bin(u, v))
        throw std::invalid_argument("conjugate symmetry anchor is self-conjugate");
    ComplexBlock out = coeffs;
    out.at((8 - u) % 8, (8 - v) % 8) = std::conj(out.at(u, v));
    return out;
}

}  // namespace phasemark
