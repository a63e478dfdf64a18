#pragma once

// Test-only reference implementations and generators. The transform oracles
// here evaluate the textbook definitions directly (double loops and dense
// matrix products) and stay independent of the butterfly fast paths they
// check.

#include <array>
#include <complex>
#include <random>

#include "phasemark/block.hpp"

namespace testutil {

using phasemark::ComplexBlock;
using phasemark::cplx;
using phasemark::kBlockDim;
using phasemark::kBlockSamples;
using phasemark::SpatialBlock;

// The order-8 sequency-ordered complex Hadamard matrix as printed, one row
// per string: '1' = 1, 'm' = -1, 'i' = i, 'j' = -i.
inline const std::array<const char*, 8>& printed_scht_rows() {
    static const std::array<const char*, 8> rows = {
        "11111111",
        "11iimmjj",
        "1imj1imj",
        "1ij1mjim",
        "1m1m1m1m",
        "1mijm1ji",
        "1jmi1jmi",
        "1jjmmii1",
    };
    return rows;
}

inline cplx printed_scht_entry(int r, int k) {
    switch (printed_scht_rows()[r][k]) {
        case '1': return {1, 0};
        case 'm': return {-1, 0};
        case 'i': return {0, 1};
        default: return {0, -1};
    }
}

struct DenseOpCount {
    long mults = 0;
    long adds = 0;
};

using Mat8 = std::array<cplx, kBlockSamples>;

inline Mat8 mat_mul(const Mat8& a, const Mat8& b, DenseOpCount* ops = nullptr) {
    Mat8 out{};
    for (int r = 0; r < kBlockDim; ++r) {
        for (int c = 0; c < kBlockDim; ++c) {
            cplx acc = a[r * kBlockDim] * b[c];
            if (ops) ops->mults += 1;
            for (int k = 1; k < kBlockDim; ++k) {
                acc += a[r * kBlockDim + k] * b[k * kBlockDim + c];
                if (ops) {
                    ops->mults += 1;
                    ops->adds += 1;
                }
            }
            out[r * kBlockDim + c] = acc;
        }
    }
    return out;
}

// 2D DFT straight from the definition, no factorization.
inline ComplexBlock naive_dft2(const SpatialBlock& b) {
    ComplexBlock out;
    for (int u = 0; u < kBlockDim; ++u) {
        for (int v = 0; v < kBlockDim; ++v) {
            cplx acc = 0;
            for (int x = 0; x < kBlockDim; ++x) {
                for (int y = 0; y < kBlockDim; ++y) {
                    const double ang = -2.0 * phasemark::kPi * (u * x + v * y) / 8.0;
                    acc += b.at(x, y) * cplx(std::cos(ang), std::sin(ang));
                }
            }
            out.at(u, v) = acc;
        }
    }
    return out;
}

inline std::array<cplx, kBlockSamples> naive_dft2_inverse(const ComplexBlock& c) {
    std::array<cplx, kBlockSamples> out{};
    for (int x = 0; x < kBlockDim; ++x) {
        for (int y = 0; y < kBlockDim; ++y) {
            cplx acc = 0;
            for (int u = 0; u < kBlockDim; ++u) {
                for (int v = 0; v < kBlockDim; ++v) {
                    const double ang = 2.0 * phasemark::kPi * (u * x + v * y) / 8.0;
                    acc += c.at(u, v) * cplx(std::cos(ang), std::sin(ang));
                }
            }
            out[x * kBlockDim + y] = acc / 64.0;
        }
    }
    return out;
}

inline Mat8 printed_c_matrix() {
    Mat8 c;
    const double s = 1.0 / std::sqrt(8.0);
    for (int r = 0; r < kBlockDim; ++r)
        for (int k = 0; k < kBlockDim; ++k)
            c[r * kBlockDim + k] = std::conj(printed_scht_entry(r, k)) * s;
    return c;
}

// S = C * X * C^T as two dense products.
inline ComplexBlock naive_scht2(const SpatialBlock& b, DenseOpCount* ops = nullptr) {
    const Mat8 c = printed_c_matrix();
    Mat8 x{};
    for (int i = 0; i < kBlockSamples; ++i) x[i] = b.px[i];
    Mat8 ct;
    for (int r = 0; r < kBlockDim; ++r)
        for (int k = 0; k < kBlockDim; ++k) ct[r * kBlockDim + k] = c[k * kBlockDim + r];
    const Mat8 s = mat_mul(mat_mul(c, x, ops), ct, ops);
    ComplexBlock out;
    out.coef = s;
    return out;
}

// X = conj-transpose(C) * S * conj(C), kept fully complex.
inline Mat8 naive_scht2_inverse(const ComplexBlock& coeffs) {
    const Mat8 c = printed_c_matrix();
    Mat8 ch, cconj;
    for (int r = 0; r < kBlockDim; ++r) {
        for (int k = 0; k < kBlockDim; ++k) {
            ch[r * kBlockDim + k] = std::conj(c[k * kBlockDim + r]);
            cconj[r * kBlockDim + k] = std::conj(c[r * kBlockDim + k]);
        }
    }
    return mat_mul(mat_mul(ch, coeffs.coef), cconj);
}

inline SpatialBlock random_block(std::mt19937& rng, double lo = 0.0, double hi = 255.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    SpatialBlock b;
    for (auto& v : b.px) v = dist(rng);
    return b;
}

inline SpatialBlock random_integer_block(std::mt19937& rng) {
    std::uniform_int_distribution<int> dist(0, 255);
    SpatialBlock b;
    for (auto& v : b.px) v = dist(rng);
    return b;
}

inline double max_abs_diff(const SpatialBlock& a, const SpatialBlock& b) {
    double m = 0;
    for (int i = 0; i < kBlockSamples; ++i) m = std::max(m, std::abs(a.px[i] - b.px[i]));
    return m;
}

inline double max_abs_diff(const ComplexBlock& a, const ComplexBlock& b) {
    double m = 0;
    for (int i = 0; i < kBlockSamples; ++i) m = std::max(m, std::abs(a.coef[i] - b.coef[i]));
    return m;
}

}  // namespace testutil
