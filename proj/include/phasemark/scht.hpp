#pragma once

#include <array>

#include "phasemark/block.hpp"
#include "phasemark/dft.hpp"

namespace phasemark {

/// Sequency-ordered complex Hadamard kernel of order 8. Entries are fourth
/// roots of unity: H(r,k) = i^((r>>1)*k + (r&1)*(k>>1)), which reproduces the
/// sequency-ordered matrix entry for entry. H is symmetric and H*conj(H)^T =
/// 8*I. The normalized transform matrix is C = (1/sqrt(8)) * conj(H).
struct SchtKernel {
    std::array<cplx, kBlockSamples> h{};
    std::array<cplx, kBlockSamples> c{};

    cplx h_at(int r, int k) const { return h[r * kBlockDim + k]; }
    cplx c_at(int r, int k) const { return c[r * kBlockDim + k]; }
};

inline const SchtKernel& scht_kernel() {
    static const SchtKernel kernel = [] {
        SchtKernel k;
        constexpr cplx pow_i[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const double inv_sqrt8 = 1.0 / std::sqrt(8.0);
        for (int r = 0; r < kBlockDim; ++r) {
            for (int col = 0; col < kBlockDim; ++col) {
                const int e = ((r >> 1) * col + (r & 1) * (col >> 1)) & 3;
                k.h[r * kBlockDim + col] = pow_i[e];
                k.c[r * kBlockDim + col] = std::conj(pow_i[e]) * inv_sqrt8;
            }
        }
        return k;
    }();
    return kernel;
}

namespace detail {

// One 8-point SCHT pass y = H*x (sign=+1) or y = conj(H)*x (sign=-1).
// 24 complex additions; every twiddle is +-1 or +-i, so no multiplications.
inline void scht8_pass(cplx* a, int stride, int sign, OpCounter* ops) {
    auto mul_j = [sign](cplx z) {  // z * (sign*i)
        return sign > 0 ? cplx(-z.imag(), z.real()) : cplx(z.imag(), -z.real());
    };

    cplx u0[4], u1[4];
    for (int b = 0; b < 4; ++b) {
        const cplx lo = a[b * stride], hi = a[(b + 4) * stride];
        u0[b] = lo + hi;
        u1[b] = lo - hi;
    }
    if (ops) ops->complex_adds += 8;

    u1[2] = mul_j(u1[2]);
    u1[3] = mul_j(u1[3]);

    // d = 0 branch feeds even output rows' halves, d = 1 the odd ones.
    const cplx s0e0 = u0[0] + u0[2], s1e0 = u0[1] + u0[3];
    const cplx s0o0 = u0[0] - u0[2], s1o0 = u0[1] - u0[3];
    const cplx s0e1 = u1[0] + u1[2], s1e1 = u1[1] + u1[3];
    const cplx s0o1 = u1[0] - u1[2], s1o1 = u1[1] - u1[3];
    if (ops) ops->complex_adds += 8;

    a[0 * stride] = s0e0 + s1e0;
    a[4 * stride] = s0e0 - s1e0;
    a[2 * stride] = s0o0 + mul_j(s1o0);
    a[6 * stride] = s0o0 - mul_j(s1o0);
    a[1 * stride] = s0e1 + s1e1;
    a[5 * stride] = s0e1 - s1e1;
    a[3 * stride] = s0o1 + mul_j(s1o1);
    a[7 * stride] = s0o1 - mul_j(s1o1);
    if (ops) ops->complex_adds += 8;
}

inline void scht2d(ComplexBlock& b, int sign, OpCounter* ops) {
    for (int r = 0; r < kBlockDim; ++r) scht8_pass(&b.coef[r * kBlockDim], 1, sign, ops);
    for (int c = 0; c < kBlockDim; ++c) scht8_pass(&b.coef[c], kBlockDim, sign, ops);
    for (auto& v : b.coef) v *= 0.125;  // (1/sqrt(8))^2 per axis
}

}  // namespace detail

/// Forward 2D SCHT: S = C * X * C^T. 384 complex additions, no complex
/// multiplications per block.
inline ComplexBlock scht2_forward(const SpatialBlock& block, OpCounter* ops = nullptr) {
    ComplexBlock out;
    for (int i = 0; i < kBlockSamples; ++i) out.coef[i] = cplx(block.px[i], 0.0);
    detail::scht2d(out, -1, ops);
    return out;
}

/// Inverse 2D SCHT: X = conj-transpose(C) * S * conj(C). The real part is
/// returned; a coefficient rewritten by embedding generally leaves a nonzero
/// imaginary residue, which is reported, never treated as an error.
inline InverseResult scht2_inverse(const ComplexBlock& coeffs, OpCounter* ops = nullptr) {
    ComplexBlock work = coeffs;
    detail::scht2d(work, +1, ops);
    InverseResult out;
    for (int i = 0; i < kBlockSamples; ++i) {
        out.spatial.px[i] = work.coef[i].real();
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(work.coef[i].imag()));
    }
    return out;
}

}  // namespace phasemark
