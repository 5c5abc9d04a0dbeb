// Compiled with -mavx2 on x86-64; selected only after a runtime CPU check.

#include "kernels_internal.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace rcm::simd {

#if defined(__AVX2__)

namespace {

void classify_avx2(const ReachParams& p, const double* px, const double* py, const double* pz,
                   std::size_t n, std::uint8_t* out) {
    const __m256d rx = _mm256_set1_pd(p.rcm_x);
    const __m256d ry = _mm256_set1_pd(p.rcm_y);
    const __m256d rz = _mm256_set1_pd(p.rcm_z);
    const __m256d ta = _mm256_set1_pd(p.tan_alpha);
    const __m256d sb = _mm256_set1_pd(p.sin_beta);
    const __m256d dmin = _mm256_set1_pd(p.depth_min);
    const __m256d dmax = _mm256_set1_pd(p.depth_max);
    const __m256d deg = _mm256_set1_pd(kDegenerateDepth);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sign = _mm256_set1_pd(-0.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_sub_pd(_mm256_loadu_pd(px + i), rx);
        const __m256d y = _mm256_sub_pd(_mm256_loadu_pd(py + i), ry);
        const __m256d z = _mm256_sub_pd(_mm256_loadu_pd(pz + i), rz);
        const __m256d n2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)),
                                         _mm256_mul_pd(z, z));
        const __m256d d = _mm256_sqrt_pd(n2);

        const int ok = _mm256_movemask_pd(_mm256_cmp_pd(d, deg, _CMP_GE_OQ));
        const int front = _mm256_movemask_pd(_mm256_cmp_pd(z, zero, _CMP_GT_OQ));
        const int fa = _mm256_movemask_pd(
            _mm256_cmp_pd(_mm256_andnot_pd(sign, y), _mm256_mul_pd(ta, z), _CMP_GT_OQ));
        const int fb = _mm256_movemask_pd(
            _mm256_cmp_pd(_mm256_andnot_pd(sign, x), _mm256_mul_pd(sb, d), _CMP_GT_OQ));
        const int lo = _mm256_movemask_pd(_mm256_cmp_pd(d, dmin, _CMP_LT_OQ));
        const int hi = _mm256_movemask_pd(_mm256_cmp_pd(d, dmax, _CMP_GT_OQ));

        for (int lane = 0; lane < 4; ++lane) {
            const auto bit = [lane](int m) { return ((m >> lane) & 1) != 0; };
            out[i + lane] = compose_lane(bit(ok), bit(front), bit(fa), bit(fb), bit(lo), bit(hi));
        }
    }
    for (; i < n; ++i) out[i] = classify_one(p, px[i], py[i], pz[i]);
}

double min_pairwise_dot_avx2(const double* x, const double* y, const double* z, std::size_t n) {
    double best = 1.0;
    __m256d vbest = _mm256_set1_pd(1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const __m256d bx = _mm256_set1_pd(x[i]);
        const __m256d by = _mm256_set1_pd(y[i]);
        const __m256d bz = _mm256_set1_pd(z[i]);
        std::size_t j = i + 1;
        for (; j + 4 <= n; j += 4) {
            const __m256d d = _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(bx, _mm256_loadu_pd(x + j)),
                              _mm256_mul_pd(by, _mm256_loadu_pd(y + j))),
                _mm256_mul_pd(bz, _mm256_loadu_pd(z + j)));
            vbest = _mm256_min_pd(vbest, d);
        }
        for (; j < n; ++j) {
            const double d = x[i] * x[j] + y[i] * y[j] + z[i] * z[j];
            if (d < best) best = d;
        }
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vbest);
    for (double v : lanes) {
        if (v < best) best = v;
    }
    return best;
}

}  // namespace

const KernelTable* avx2_kernels() noexcept {
    static const KernelTable table{Isa::Avx2, &classify_avx2, &min_pairwise_dot_avx2};
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() noexcept { return nullptr; }

#endif

}  // namespace rcm::simd
