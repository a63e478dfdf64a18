#pragma once

#include "phasemark/block.hpp"
#include "phasemark/dft.hpp"
#include "phasemark/scht.hpp"

namespace phasemark {

inline ComplexBlock forward_transform(const SpatialBlock& b, TransformKind kind,
                                      OpCounter* ops = nullptr) {
    return kind == TransformKind::Dft ? dft2_forward(b, ops) : scht2_forward(b, ops);
}

inline InverseResult inverse_transform(const ComplexBlock& c, TransformKind kind,
                                       OpCounter* ops = nullptr) {
    return kind == TransformKind::Dft ? dft2_inverse(c, ops) : scht2_inverse(c, ops);
}

/// Complex add/mult count of one forward 8x8 fast-path transform, measured by
/// running the instrumented butterflies on a probe block. Fresh counter per
/// call, so repeated calls return identical values.
inline OpCounter count_ops(TransformKind kind) {
    OpCounter ops;
    SpatialBlock probe;
    for (int i = 0; i < kBlockSamples; ++i) probe.px[i] = static_cast<double>((i * 37) % 256);
    (void)forward_transform(probe, kind, &ops);
    return ops;
}

}  // namespace phasemark
