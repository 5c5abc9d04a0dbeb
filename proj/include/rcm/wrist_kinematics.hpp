#pragma once

// Kinematics of the two-degree-of-freedom spherical wrist.
//
// The endoscope direction is parameterized by two tilts: alpha about x and
// beta about y. The wrist is actuated by two base revolute joints theta1 and
// theta2. Both angle pairs are confined to the open square (-pi/2, pi/2)^2
// for the kinematic maps; the types themselves accept any finite value and
// store it normalized to (-pi, pi].

#include "rcm/vec3.hpp"

namespace rcm {

// Values of cos(alpha), cos(beta), cos(theta) below this are treated as the
// degenerate half-plane and rejected.
inline constexpr double kCosineTolerance = 1e-9;

// Central finite-difference step of the default dexterity measure.
inline constexpr double kDexterityStep = 1e-6;

// Wraps an angle into (-pi, pi]. Throws DomainError for non-finite input.
double normalize_angle(double rad);

class OrientationAngles {
public:
    OrientationAngles() = default;
    OrientationAngles(double alpha_rad, double beta_rad);

    static OrientationAngles from_degrees(double alpha_deg, double beta_deg);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    bool operator==(const OrientationAngles&) const = default;

private:
    double alpha_ = 0.0;
    double beta_ = 0.0;
};

class JointAngles {
public:
    JointAngles() = default;
    JointAngles(double theta1_rad, double theta2_rad);

    static JointAngles from_degrees(double theta1_deg, double theta2_deg);

    double theta1() const noexcept { return theta1_; }
    double theta2() const noexcept { return theta2_; }

    bool operator==(const JointAngles&) const = default;

private:
    double theta1_ = 0.0;
    double theta2_ = 0.0;
};

// Unit vector. Construction normalizes; a zero or non-finite input throws.
class Direction3 {
public:
    Direction3() = default;
    explicit Direction3(const Vec3& v);
    Direction3(double x, double y, double z) : Direction3(Vec3{x, y, z}) {}

    double x() const noexcept { return v_.x; }
    double y() const noexcept { return v_.y; }
    double z() const noexcept { return v_.z; }
    const Vec3& vec() const noexcept { return v_; }

private:
    Vec3 v_{0.0, 0.0, 1.0};
};

// V = [sin b, -sin a cos b, cos a cos b]^T.
Direction3 direction_vector(const OrientationAngles& angles) noexcept;

// Joint angles that realize the given orientation.
// Throws DomainError when cos(alpha) or cos(beta) <= kCosineTolerance.
JointAngles inverse_kinematics(const OrientationAngles& angles);

// Closed-form inverse of inverse_kinematics: alpha = theta1,
// beta = atan(tan(theta2) * cos(theta1)).
// Throws DomainError outside the open square (-pi/2, pi/2)^2.
OrientationAngles forward_kinematics(const JointAngles& joints);

// Angular distance to the nearest singular configuration |theta_i| = pi.
double singularity_margin(const JointAngles& joints) noexcept;

// 2x2 Jacobian d(alpha, beta)/d(theta1, theta2), row-major.
struct Jacobian2 {
    double a00, a01, a10, a11;
};

// Jacobian of forward_kinematics by central differences of the given step.
// Throws DomainError if the stencil leaves the forward-kinematics domain.
Jacobian2 orientation_jacobian(const JointAngles& joints, double step = kDexterityStep);

// Ratio of largest to smallest singular value; +inf for a singular matrix.
double condition_number(const Jacobian2& j) noexcept;

// Condition number of the orientation Jacobian; 1 at the isotropic posture.
double dexterity(const JointAngles& joints, double step = kDexterityStep);

}  // namespace rcm
