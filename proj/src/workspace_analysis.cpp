#include "rcm/workspace_analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "rcm/errors.hpp"
#include "rcm/units.hpp"

namespace rcm {

std::string failure_reason(std::uint8_t failures) {
    static constexpr std::array<std::pair<std::uint8_t, const char*>, 6> kNames = {{
        {simd::kFailDegenerate, "degenerate"},
        {simd::kFailBehind, "behind"},
        {simd::kFailAlpha, "alpha"},
        {simd::kFailBeta, "beta"},
        {simd::kFailDepthLow, "depth_min"},
        {simd::kFailDepthHigh, "depth_max"},
    }};
    std::string out;
    for (const auto& [bit, name] : kNames) {
        if ((failures & bit) == 0) continue;
        if (!out.empty()) out += '|';
        out += name;
    }
    return out;
}

ReachabilityReport reachability(const MechanismConfig& config, const Vec3& target) {
    ReachabilityReport r;
    AimSolution aim;
    try {
        aim = angles_from_target(config, target);
    } catch (const DegenerateTarget&) {
        r.failures = simd::kFailDegenerate;
        return r;
    } catch (const DomainError&) {
        r.failures = simd::kFailBehind;
        return r;
    }
    r.aim = aim;
    const LimitReport limits = check_limits(config, aim.angles);
    r.limits = limits;
    std::uint8_t f = simd::kReachable;
    if (!limits.alpha_ok) f |= simd::kFailAlpha;
    if (!limits.beta_ok) f |= simd::kFailBeta;
    if (aim.depth < config.insertion.min_mm) f |= simd::kFailDepthLow;
    if (aim.depth > config.insertion.max_mm) f |= simd::kFailDepthHigh;
    r.failures = f;
    r.alpha_deficit = std::max(0.0, -limits.alpha_margin);
    r.beta_deficit = std::max(0.0, -limits.beta_margin);
    r.reachable = f == simd::kReachable;
    if (r.reachable) {
        const JointAngles joints = inverse_kinematics(aim.angles);
        r.singularity_margin = singularity_margin(joints);
        try {
            r.dexterity = dexterity(joints);
        } catch (const DomainError&) {
            // stencil touches the edge of the kinematic domain
        }
    }
    return r;
}

CoverageResult coverage(const MechanismConfig& config, const PointCloud& targets) {
    CoverageResult out;
    out.total = targets.size();
    out.points.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out.points.push_back(reachability(config, targets[i]));
        if (out.points.back().reachable) ++out.reachable;
    }
    out.fraction = out.total ? static_cast<double>(out.reachable) / static_cast<double>(out.total) : 0.0;
    return out;
}

double coverage_fraction(const MechanismConfig& config, const PointCloud& targets) {
    if (targets.empty()) return 0.0;
    const std::size_t n = simd::count_reachable(simd::make_reach_params(config), targets);
    return static_cast<double>(n) / static_cast<double>(targets.size());
}

namespace {

// Probe directions on a Fibonacci sphere.
std::vector<Vec3> probe_directions(std::size_t count) {
    std::vector<Vec3> dirs;
    dirs.reserve(count);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
        const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(k);
        dirs.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return dirs;
}

}  // namespace

double apex_angle(const PointCloud& dirs, bool* exact) {
    if (exact) *exact = true;
    if (dirs.size() < 2) return 0.0;
    const PointCloud* set = &dirs;
    PointCloud candidates;
    if (dirs.size() > kExactApexLimit) {
        // The farthest pair of a point set are vertices of its convex hull;
        // keep the points extreme along each probe as hull candidates.
        if (exact) *exact = false;
        std::vector<char> keep(dirs.size(), 0);
        for (const Vec3& probe : probe_directions(512)) {
            std::size_t best = 0;
            double best_dot = probe.dot(dirs[0]);
            for (std::size_t i = 1; i < dirs.size(); ++i) {
                const double d = probe.dot(dirs[i]);
                if (d > best_dot) {
                    best_dot = d;
                    best = i;
                }
            }
            keep[best] = 1;
        }
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            if (keep[i]) candidates.push_back(dirs[i]);
        }
        set = &candidates;
    }
    const double min_dot = simd::min_pairwise_dot(*set);
    return std::acos(std::clamp(min_dot, -1.0, 1.0));
}

SpanReport required_span(const PointCloud& targets, const Vec3& rcm_point) {
    if (targets.empty()) throw EmptyInput("required_span needs at least one target");
    MechanismConfig frame;
    frame.rcm_point = rcm_point;
    SpanReport s;
    s.samples = targets.size();
    PointCloud dirs;
    dirs.reserve(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const AimSolution aim = angles_from_target(frame, targets[i]);
        s.max_abs_alpha = std::max(s.max_abs_alpha, std::abs(aim.angles.alpha()));
        s.max_abs_beta = std::max(s.max_abs_beta, std::abs(aim.angles.beta()));
        const Vec3 u = (targets[i] - rcm_point) * (1.0 / aim.depth);
        s.max_off_axis = std::max(s.max_off_axis, std::acos(std::clamp(u.z, -1.0, 1.0)));
        dirs.push_back(u);
    }
    s.apex = apex_angle(dirs, &s.apex_exact);
    return s;
}

OrientationMap orientation_map(const MechanismConfig& config, std::size_t n_alpha, std::size_t n_beta) {
    if (n_alpha < 2 || n_beta < 2) throw DomainError("orientation map needs at least 2 cells per axis");
    OrientationMap map;
    map.n_alpha = n_alpha;
    map.n_beta = n_beta;
    map.cells.reserve(n_alpha * n_beta);
    // limit * (2 i / (n - 1) - 1) hits both end points exactly.
    const auto coord = [](double limit, std::size_t i, std::size_t n) {
        return limit * (2.0 * static_cast<double>(i) / static_cast<double>(n - 1) - 1.0);
    };
    for (std::size_t i = 0; i < n_alpha; ++i) {
        for (std::size_t j = 0; j < n_beta; ++j) {
            OrientationCell c;
            c.alpha = coord(config.limit_alpha, i, n_alpha);
            c.beta = coord(config.limit_beta, j, n_beta);
            const OrientationAngles angles(c.alpha, c.beta);
            c.admissible = check_limits(config, angles).admissible();
            const JointAngles joints = inverse_kinematics(angles);
            c.singularity_margin = singularity_margin(joints);
            try {
                c.dexterity = dexterity(joints);
            } catch (const DomainError&) {
                c.dexterity = std::numeric_limits<double>::infinity();
            }
            map.cells.push_back(c);
        }
    }
    return map;
}

}  // namespace rcm
