#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string_view>
#include <vector>

#include "kernels_internal.hpp"
#include "rcm/errors.hpp"
#include "rcm/units.hpp"

namespace rcm::simd {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

ReachParams make_reach_params(const MechanismConfig& config) noexcept {
    const auto bound = [](double limit, auto fn) {
        const double widened = limit + kLimitTolerance;
        return widened < kPi / 2.0 ? fn(widened) : std::numeric_limits<double>::infinity();
    };
    ReachParams p;
    p.rcm_x = config.rcm_point.x;
    p.rcm_y = config.rcm_point.y;
    p.rcm_z = config.rcm_point.z;
    p.tan_alpha = bound(config.limit_alpha, [](double a) { return std::tan(a); });
    p.sin_beta = bound(config.limit_beta, [](double a) { return std::sin(a); });
    p.depth_min = config.insertion.min_mm;
    p.depth_max = config.insertion.max_mm;
    return p;
}

const KernelTable& active_kernels() noexcept {
    static const KernelTable& table = []() -> const KernelTable& {
        const char* env = std::getenv("RCM_SIMD");
        if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
        if (const KernelTable* t = avx2_kernels()) return *t;
        if (const KernelTable* t = neon_kernels()) return *t;
        return scalar_kernels();
    }();
    return table;
}

void classify_reachability(const ReachParams& params, const PointCloud& points,
                           std::span<std::uint8_t> out) {
    if (out.size() != points.size()) throw DomainError("output span size does not match point count");
    active_kernels().classify(params, points.x.data(), points.y.data(), points.z.data(), points.size(),
                              out.data());
}

std::size_t count_reachable(const ReachParams& params, const PointCloud& points) {
    std::vector<std::uint8_t> flags(points.size());
    classify_reachability(params, points, flags);
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), kReachable));
}

double min_pairwise_dot(const PointCloud& unit_directions) {
    return active_kernels().min_pairwise_dot(unit_directions.x.data(), unit_directions.y.data(),
                                             unit_directions.z.data(), unit_directions.size());
}

}  // namespace rcm::simd
