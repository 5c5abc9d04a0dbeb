#include <cmath>

#include "kernels_internal.hpp"

namespace rcm::simd {

void classify_scalar(const ReachParams& p, const double* px, const double* py, const double* pz,
                     std::size_t n, std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = classify_one(p, px[i], py[i], pz[i]);
}

double min_pairwise_dot_scalar(const double* x, const double* y, const double* z, std::size_t n) {
    double best = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = x[i] * x[j] + y[i] * y[j] + z[i] * z[j];
            if (d < best) best = d;
        }
    }
    return best;
}

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{Isa::Scalar, &classify_scalar, &min_pairwise_dot_scalar};
    return table;
}

}  // namespace rcm::simd
