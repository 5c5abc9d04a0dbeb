#pragma once

// Reachability of anatomical targets and orientation-space maps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcm/point_cloud.hpp"
#include "rcm/rcm_mechanism.hpp"
#include "rcm/simd/kernels.hpp"

namespace rcm {

struct ReachabilityReport {
    bool reachable = false;
    std::uint8_t failures = simd::kReachable;  // simd::ReachFlag bits
    std::optional<AimSolution> aim;            // absent for degenerate/behind targets
    std::optional<LimitReport> limits;
    // Deficits are positive amounts beyond the limit, rad; zero when within.
    double alpha_deficit = 0.0;
    double beta_deficit = 0.0;
    // Present for reachable targets.
    std::optional<double> singularity_margin;
    std::optional<double> dexterity;
};

// "degenerate", "behind", "alpha", "beta", "depth_min", "depth_max", joined
// with '|'; empty when reachable.
std::string failure_reason(std::uint8_t failures);

// Aims at `target`, then checks joint limits and insertion range.
ReachabilityReport reachability(const MechanismConfig& config, const Vec3& target);

struct CoverageResult {
    double fraction = 0.0;
    std::size_t reachable = 0;
    std::size_t total = 0;
    std::vector<ReachabilityReport> points;  // sample order
};

// Fraction of targets that are reachable, with the full per-point report.
CoverageResult coverage(const MechanismConfig& config, const PointCloud& targets);

// Same fraction through the batch kernels, without per-point detail.
double coverage_fraction(const MechanismConfig& config, const PointCloud& targets);

struct SpanReport {
    double max_abs_alpha = 0.0;  // rad
    double max_abs_beta = 0.0;   // rad
    double max_off_axis = 0.0;   // largest angle between a target direction and +z, rad
    double apex = 0.0;           // largest angle between two target directions, rad
    bool apex_exact = true;      // false when the candidate reduction was used
    std::size_t samples = 0;
};

// Exhaustive pairwise search is used up to this many targets.
inline constexpr std::size_t kExactApexLimit = 2000;

// Angular span the mechanism needs to aim at every target from rcm_point.
// Throws EmptyInput for no targets; DegenerateTarget/DomainError propagate.
SpanReport required_span(const PointCloud& targets, const Vec3& rcm_point);

// Largest pairwise angle between unit directions. Above kExactApexLimit
// only directions extreme along a fixed spherical set of probes are
// compared.
double apex_angle(const PointCloud& unit_directions, bool* exact = nullptr);

struct OrientationCell {
    double alpha = 0.0;  // rad
    double beta = 0.0;   // rad
    bool admissible = false;
    double singularity_margin = 0.0;
    double dexterity = 0.0;  // +inf where the difference stencil leaves the domain
};

struct OrientationMap {
    std::size_t n_alpha = 0;
    std::size_t n_beta = 0;
    std::vector<OrientationCell> cells;  // alpha-major

    const OrientationCell& at(std::size_t i_alpha, std::size_t i_beta) const {
        return cells[i_alpha * n_beta + i_beta];
    }
};

// Regular grid over the joint-limit box, end points included.
// Throws DomainError when either count is below 2.
OrientationMap orientation_map(const MechanismConfig& config, std::size_t n_alpha, std::size_t n_beta);

}  // namespace rcm
