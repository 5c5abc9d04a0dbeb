#pragma once

// Batch kernels for the data-parallel inner loops of the workspace analysis.
//
// Every kernel has a scalar reference implementation and optional AVX2
// (x86-64) and NEON (AArch64) variants. The vector variants evaluate the
// same IEEE operations in the same order as the reference, so their results
// are bitwise identical; tests check that for each variant available on
// the host. The active table is chosen once at first use from the CPU
// features, and can be forced to the reference with RCM_SIMD=scalar.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "rcm/point_cloud.hpp"
#include "rcm/rcm_mechanism.hpp"

namespace rcm::simd {

// Per-point failure bits; zero means reachable. Degenerate and Behind are
// exclusive of all others.
enum ReachFlag : std::uint8_t {
    kReachable = 0,
    kFailDegenerate = 1 << 0,
    kFailBehind = 1 << 1,
    kFailAlpha = 1 << 2,
    kFailBeta = 1 << 3,
    kFailDepthLow = 1 << 4,
    kFailDepthHigh = 1 << 5,
};

// Trigonometry-free form of the reachability test. With r = p - rcm and
// d = |r|: |alpha| <= La  <=>  |r_y| <= tan(La) r_z  (r_z > 0), and
// |beta| <= Lb  <=>  |r_x| <= sin(Lb) d.
struct ReachParams {
    double rcm_x = 0.0, rcm_y = 0.0, rcm_z = 0.0;
    double tan_alpha = 0.0;
    double sin_beta = 0.0;
    double depth_min = 0.0, depth_max = 0.0;
};

ReachParams make_reach_params(const MechanismConfig& config) noexcept;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    // out[i] = failure bits of point i.
    void (*classify)(const ReachParams& params, const double* x, const double* y, const double* z,
                     std::size_t n, std::uint8_t* out);
    // Minimum of x_i x_j + y_i y_j + z_i z_j over all pairs i < j; 1 if n < 2.
    double (*min_pairwise_dot)(const double* x, const double* y, const double* z, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
// nullptr when the variant is not compiled in or not supported by the CPU.
const KernelTable* avx2_kernels() noexcept;
const KernelTable* neon_kernels() noexcept;

// Best supported table, honoring RCM_SIMD=scalar.
const KernelTable& active_kernels() noexcept;

void classify_reachability(const ReachParams& params, const PointCloud& points,
                           std::span<std::uint8_t> out);
std::size_t count_reachable(const ReachParams& params, const PointCloud& points);
double min_pairwise_dot(const PointCloud& unit_directions);

}  // namespace rcm::simd
