#include "rcm/rcm_mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rcm/errors.hpp"
#include "rcm/units.hpp"

namespace rcm {

void MechanismConfig::validate() const {
    if (!rcm_point.finite()) throw ConfigError("rcm_point_mm", "must be finite");
    const auto check_limit = [](double v, const char* field) {
        if (!(v > 0.0 && v < kPi / 2.0)) throw ConfigError(field, "must lie in (0, 90) degrees");
    };
    check_limit(limit_alpha, "limit_alpha_deg");
    check_limit(limit_beta, "limit_beta_deg");
    if (!(std::isfinite(insertion.min_mm) && insertion.min_mm >= 0.0)) {
        throw ConfigError("insertion_min_mm", "must be finite and >= 0");
    }
    if (!(std::isfinite(insertion.max_mm) && insertion.max_mm > insertion.min_mm)) {
        throw ConfigError("insertion_max_mm", "must be finite and greater than insertion_min_mm");
    }
    if (!(std::isfinite(parallelogram_height) && parallelogram_height > 0.0)) {
        throw ConfigError("parallelogram_height_mm", "must be positive");
    }
    if (!std::isfinite(height_to_dmax_gain)) throw ConfigError("height_to_dmax_gain", "must be finite");
}

MechanismConfig with_parallelogram_height(const MechanismConfig& config, double height_mm) {
    if (!(std::isfinite(height_mm) && height_mm > 0.0)) {
        throw InfeasibleBounds("parallelogram height must be positive");
    }
    MechanismConfig out = config;
    out.insertion.max_mm =
        config.insertion.max_mm + config.height_to_dmax_gain * (height_mm - config.parallelogram_height);
    out.parallelogram_height = height_mm;
    if (!(out.insertion.max_mm > out.insertion.min_mm)) {
        throw InfeasibleBounds("parallelogram height " + std::to_string(height_mm) +
                               " mm leaves an empty insertion range");
    }
    return out;
}

LimitReport check_limits(const MechanismConfig& config, const OrientationAngles& angles) noexcept {
    LimitReport r;
    r.alpha_margin = config.limit_alpha - std::abs(angles.alpha());
    r.beta_margin = config.limit_beta - std::abs(angles.beta());
    r.alpha_ok = r.alpha_margin >= -kLimitTolerance;
    r.beta_ok = r.beta_margin >= -kLimitTolerance;
    return r;
}

bool depth_in_range(const MechanismConfig& config, double depth_mm) noexcept {
    return depth_mm >= config.insertion.min_mm && depth_mm <= config.insertion.max_mm;
}

EndoscopePose endoscope_pose(const MechanismConfig& config, const OrientationAngles& angles,
                             double depth_mm) {
    const LimitReport limits = check_limits(config, angles);
    if (!limits.alpha_ok) throw LimitViolation("alpha", -limits.alpha_margin);
    if (!limits.beta_ok) throw LimitViolation("beta", -limits.beta_margin);
    if (!depth_in_range(config, depth_mm)) {
        throw DepthOutOfRange("depth " + std::to_string(depth_mm) + " mm outside [" +
                              std::to_string(config.insertion.min_mm) + ", " +
                              std::to_string(config.insertion.max_mm) + "]");
    }
    const Direction3 dir = direction_vector(angles);
    return {config.rcm_point, dir, depth_mm, config.rcm_point + dir.vec() * depth_mm};
}

AimSolution angles_from_target(const MechanismConfig& config, const Vec3& target) {
    const Vec3 r = target - config.rcm_point;
    const double depth = r.norm();
    if (!(depth >= kDegenerateDepth)) {
        throw DegenerateTarget("target coincides with the remote center");
    }
    const Vec3 u = r * (1.0 / depth);
    if (!(u.z > 0.0)) throw DomainError("target is not in front of the remote center (u_z <= 0)");
    const double beta = std::asin(std::clamp(u.x, -1.0, 1.0));
    const double alpha = std::atan2(-u.y, u.z);
    return {OrientationAngles(alpha, beta), depth};
}

}  // namespace rcm
