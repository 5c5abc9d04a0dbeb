#pragma once

#include <cmath>
#include <cstdint>

#include "rcm/rcm_mechanism.hpp"
#include "rcm/simd/kernels.hpp"

namespace rcm::simd {

// Reference classification of one point. Vector variants use this for
// their tails, so every lane sees exactly these operations.
inline std::uint8_t classify_one(const ReachParams& p, double px, double py, double pz) noexcept {
    const double x = px - p.rcm_x;
    const double y = py - p.rcm_y;
    const double z = pz - p.rcm_z;
    const double d = std::sqrt(x * x + y * y + z * z);
    if (!(d >= kDegenerateDepth)) return kFailDegenerate;
    if (!(z > 0.0)) return kFailBehind;
    std::uint8_t f = kReachable;
    if (std::abs(y) > p.tan_alpha * z) f |= kFailAlpha;
    if (std::abs(x) > p.sin_beta * d) f |= kFailBeta;
    if (d < p.depth_min) f |= kFailDepthLow;
    if (d > p.depth_max) f |= kFailDepthHigh;
    return f;
}

// Assemble the flag byte of one lane from the per-test lane bits.
inline std::uint8_t compose_lane(bool ok_depth, bool front, bool fail_a, bool fail_b, bool low,
                                 bool high) noexcept {
    if (!ok_depth) return kFailDegenerate;
    if (!front) return kFailBehind;
    return static_cast<std::uint8_t>((fail_a ? kFailAlpha : 0) | (fail_b ? kFailBeta : 0) |
                                     (low ? kFailDepthLow : 0) | (high ? kFailDepthHigh : 0));
}

void classify_scalar(const ReachParams& p, const double* x, const double* y, const double* z,
                     std::size_t n, std::uint8_t* out);
double min_pairwise_dot_scalar(const double* x, const double* y, const double* z, std::size_t n);

}  // namespace rcm::simd
