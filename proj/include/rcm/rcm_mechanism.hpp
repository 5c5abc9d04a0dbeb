#pragma once

// The assembled device: spherical wrist, double parallelogram and insertion
// slide. The parallelogram transmits the wrist orientation to the endoscope
// shaft, which always passes through the fixed remote center.

#include <utility>

#include "rcm/vec3.hpp"
#include "rcm/wrist_kinematics.hpp"

namespace rcm {

// Angular slack applied to the closed joint-limit intervals so that targets
// lying exactly on a limit (e.g. 45 degrees) are admitted regardless of the
// rounding of the limit conversion.
inline constexpr double kLimitTolerance = 1e-12;

// Targets closer than this to the remote center have no defined direction.
inline constexpr double kDegenerateDepth = 1e-9;

struct InsertionRange {
    double min_mm = 0.0;
    double max_mm = 0.0;
};

struct MechanismConfig {
    Vec3 rcm_point;                     // mm, world frame
    double limit_alpha = 0.0;           // symmetric bound, rad, in (0, pi/2)
    double limit_beta = 0.0;            // symmetric bound, rad, in (0, pi/2)
    InsertionRange insertion;           // mm, 0 <= min < max
    double parallelogram_height = 1.0;  // mm, > 0
    // Linear surrogate d_max = d_max_base + gain * (height - height_base),
    // where the base values are the ones this config was written with.
    double height_to_dmax_gain = 1.0;

    // Throws ConfigError naming the first invalid field.
    void validate() const;
};

// Copy of `config` with the parallelogram height changed and d_max moved
// along the linear insertion surrogate. Throws InfeasibleBounds if the
// resulting range is empty.
MechanismConfig with_parallelogram_height(const MechanismConfig& config, double height_mm);

struct EndoscopePose {
    Vec3 rcm_point;
    Direction3 direction;
    double depth = 0.0;
    Vec3 tip;
};

struct LimitReport {
    bool alpha_ok = false;
    bool beta_ok = false;
    double alpha_margin = 0.0;  // limit - |alpha|, rad
    double beta_margin = 0.0;   // limit - |beta|, rad

    bool admissible() const noexcept { return alpha_ok && beta_ok; }
};

// Closed-interval joint-limit check (with kLimitTolerance slack).
LimitReport check_limits(const MechanismConfig& config, const OrientationAngles& angles) noexcept;

bool depth_in_range(const MechanismConfig& config, double depth_mm) noexcept;

// Throws LimitViolation or DepthOutOfRange.
EndoscopePose endoscope_pose(const MechanismConfig& config, const OrientationAngles& angles,
                             double depth_mm);

struct AimSolution {
    OrientationAngles angles;
    double depth = 0.0;
};

// Orientation and depth that put the tip on `target`. Limits are not
// enforced. Throws DegenerateTarget when the target coincides with the
// remote center and DomainError when it is not strictly in front of it.
AimSolution angles_from_target(const MechanismConfig& config, const Vec3& target);

}  // namespace rcm
