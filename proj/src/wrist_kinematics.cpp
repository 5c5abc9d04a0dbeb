#include "rcm/wrist_kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rcm/errors.hpp"
#include "rcm/units.hpp"

namespace rcm {

namespace {

constexpr double kHalfPi = kPi / 2.0;

void require_open_square(double a, double b, const char* name_a, const char* name_b) {
    for (auto [v, name] : {std::pair{a, name_a}, std::pair{b, name_b}}) {
        if (!(std::abs(v) < kHalfPi) || std::cos(v) <= kCosineTolerance) {
            throw DomainError(std::string(name) + " = " + std::to_string(v) +
                              " rad is outside the open interval (-pi/2, pi/2)");
        }
    }
}

}  // namespace

double normalize_angle(double rad) {
    if (!std::isfinite(rad)) throw DomainError("angle must be finite");
    // remainder() is exact, so values already in range come back unchanged.
    double r = std::remainder(rad, 2.0 * kPi);
    if (r <= -kPi) r = kPi;
    return r;
}

OrientationAngles::OrientationAngles(double alpha_rad, double beta_rad)
    : alpha_(normalize_angle(alpha_rad)), beta_(normalize_angle(beta_rad)) {}

OrientationAngles OrientationAngles::from_degrees(double alpha_deg, double beta_deg) {
    return {deg_to_rad(alpha_deg), deg_to_rad(beta_deg)};
}

JointAngles::JointAngles(double theta1_rad, double theta2_rad)
    : theta1_(normalize_angle(theta1_rad)), theta2_(normalize_angle(theta2_rad)) {}

JointAngles JointAngles::from_degrees(double theta1_deg, double theta2_deg) {
    return {deg_to_rad(theta1_deg), deg_to_rad(theta2_deg)};
}

Direction3::Direction3(const Vec3& v) {
    const double n = v.norm();
    if (!v.finite() || !(n > 0.0)) throw DomainError("direction must be finite and nonzero");
    v_ = v * (1.0 / n);
}

Direction3 direction_vector(const OrientationAngles& angles) noexcept {
    const double sa = std::sin(angles.alpha()), ca = std::cos(angles.alpha());
    const double sb = std::sin(angles.beta()), cb = std::cos(angles.beta());
    // Already unit length to rounding; the constructor renormalizes.
    return Direction3(sb, -sa * cb, ca * cb);
}

JointAngles inverse_kinematics(const OrientationAngles& angles) {
    const double ca = std::cos(angles.alpha());
    const double cb = std::cos(angles.beta());
    if (ca <= kCosineTolerance) {
        throw DomainError("cos(alpha) = " + std::to_string(ca) + " is in the degenerate half-plane");
    }
    if (cb <= kCosineTolerance) {
        throw DomainError("cos(beta) = " + std::to_string(cb) + " is in the degenerate half-plane");
    }
    const double sa = std::sin(angles.alpha());
    const double sb = std::sin(angles.beta());
    const double theta1 = -std::atan2(-sa, ca);
    const double theta2 = -std::atan2(-sb, ca * cb);
    return {theta1, theta2};
}

OrientationAngles forward_kinematics(const JointAngles& joints) {
    require_open_square(joints.theta1(), joints.theta2(), "theta1", "theta2");
    const double beta = std::atan(std::tan(joints.theta2()) * std::cos(joints.theta1()));
    return {joints.theta1(), beta};
}

double singularity_margin(const JointAngles& joints) noexcept {
    return std::min(kPi - std::abs(joints.theta1()), kPi - std::abs(joints.theta2()));
}

Jacobian2 orientation_jacobian(const JointAngles& joints, double step) {
    const double t1 = joints.theta1(), t2 = joints.theta2();
    if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
    const double lo1 = t1 - step, hi1 = t1 + step, lo2 = t2 - step, hi2 = t2 + step;
    require_open_square(lo1, lo2, "theta1 - h", "theta2 - h");
    require_open_square(hi1, hi2, "theta1 + h", "theta2 + h");

    const auto f = [](double a, double b) { return forward_kinematics(JointAngles(a, b)); };
    const OrientationAngles p1 = f(hi1, t2), m1 = f(lo1, t2);
    const OrientationAngles p2 = f(t1, hi2), m2 = f(t1, lo2);
    const double inv = 1.0 / (2.0 * step);
    return {(p1.alpha() - m1.alpha()) * inv, (p2.alpha() - m2.alpha()) * inv,
            (p1.beta() - m1.beta()) * inv, (p2.beta() - m2.beta()) * inv};
}

double condition_number(const Jacobian2& j) noexcept {
    const double frob2 = j.a00 * j.a00 + j.a01 * j.a01 + j.a10 * j.a10 + j.a11 * j.a11;
    const double det = std::abs(j.a00 * j.a11 - j.a01 * j.a10);
    if (det == 0.0) return std::numeric_limits<double>::infinity();
    // sigma_max^2 + sigma_min^2 = frob2, sigma_max * sigma_min = det.
    const double disc = std::sqrt(std::max(0.0, frob2 * frob2 - 4.0 * det * det));
    const double smax2 = 0.5 * (frob2 + disc);
    return smax2 / det;
}

double dexterity(const JointAngles& joints, double step) {
    return condition_number(orientation_jacobian(joints, step));
}

}  // namespace rcm
