// Advanced SIMD is part of the AArch64 baseline, so no runtime check.

#include "kernels_internal.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace rcm::simd {

#if defined(__aarch64__)

namespace {

void classify_neon(const ReachParams& p, const double* px, const double* py, const double* pz,
                   std::size_t n, std::uint8_t* out) {
    const float64x2_t rx = vdupq_n_f64(p.rcm_x);
    const float64x2_t ry = vdupq_n_f64(p.rcm_y);
    const float64x2_t rz = vdupq_n_f64(p.rcm_z);
    const float64x2_t ta = vdupq_n_f64(p.tan_alpha);
    const float64x2_t sb = vdupq_n_f64(p.sin_beta);
    const float64x2_t dmin = vdupq_n_f64(p.depth_min);
    const float64x2_t dmax = vdupq_n_f64(p.depth_max);
    const float64x2_t deg = vdupq_n_f64(kDegenerateDepth);
    const float64x2_t zero = vdupq_n_f64(0.0);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t x = vsubq_f64(vld1q_f64(px + i), rx);
        const float64x2_t y = vsubq_f64(vld1q_f64(py + i), ry);
        const float64x2_t z = vsubq_f64(vld1q_f64(pz + i), rz);
        // Separate multiply and add; vfmaq would change the rounding.
        const float64x2_t n2 = vaddq_f64(vaddq_f64(vmulq_f64(x, x), vmulq_f64(y, y)), vmulq_f64(z, z));
        const float64x2_t d = vsqrtq_f64(n2);

        const uint64x2_t ok = vcgeq_f64(d, deg);
        const uint64x2_t front = vcgtq_f64(z, zero);
        const uint64x2_t fa = vcgtq_f64(vabsq_f64(y), vmulq_f64(ta, z));
        const uint64x2_t fb = vcgtq_f64(vabsq_f64(x), vmulq_f64(sb, d));
        const uint64x2_t lo = vcltq_f64(d, dmin);
        const uint64x2_t hi = vcgtq_f64(d, dmax);

        out[i] = compose_lane(vgetq_lane_u64(ok, 0) != 0, vgetq_lane_u64(front, 0) != 0,
                              vgetq_lane_u64(fa, 0) != 0, vgetq_lane_u64(fb, 0) != 0,
                              vgetq_lane_u64(lo, 0) != 0, vgetq_lane_u64(hi, 0) != 0);
        out[i + 1] = compose_lane(vgetq_lane_u64(ok, 1) != 0, vgetq_lane_u64(front, 1) != 0,
                                  vgetq_lane_u64(fa, 1) != 0, vgetq_lane_u64(fb, 1) != 0,
                                  vgetq_lane_u64(lo, 1) != 0, vgetq_lane_u64(hi, 1) != 0);
    }
    for (; i < n; ++i) out[i] = classify_one(p, px[i], py[i], pz[i]);
}

double min_pairwise_dot_neon(const double* x, const double* y, const double* z, std::size_t n) {
    double best = 1.0;
    float64x2_t vbest = vdupq_n_f64(1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const float64x2_t bx = vdupq_n_f64(x[i]);
        const float64x2_t by = vdupq_n_f64(y[i]);
        const float64x2_t bz = vdupq_n_f64(z[i]);
        std::size_t j = i + 1;
        for (; j + 2 <= n; j += 2) {
            const float64x2_t d = vaddq_f64(
                vaddq_f64(vmulq_f64(bx, vld1q_f64(x + j)), vmulq_f64(by, vld1q_f64(y + j))),
                vmulq_f64(bz, vld1q_f64(z + j)));
            vbest = vminq_f64(vbest, d);
        }
        for (; j < n; ++j) {
            const double d = x[i] * x[j] + y[i] * y[j] + z[i] * z[j];
            if (d < best) best = d;
        }
    }
    const double v0 = vgetq_lane_f64(vbest, 0), v1 = vgetq_lane_f64(vbest, 1);
    if (v0 < best) best = v0;
    if (v1 < best) best = v1;
    return best;
}

}  // namespace

const KernelTable* neon_kernels() noexcept {
    static const KernelTable table{Isa::Neon, &classify_neon, &min_pairwise_dot_neon};
    return &table;
}

#else

const KernelTable* neon_kernels() noexcept { return nullptr; }

#endif

}  // namespace rcm::simd
