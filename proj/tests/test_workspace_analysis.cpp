#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "rcm/anatomy_model.hpp"
#include "rcm/errors.hpp"
#include "rcm/units.hpp"
#include "rcm/workspace_analysis.hpp"

using namespace rcm;

namespace {

MechanismConfig make_config(double limit_deg, double dmin, double dmax, Vec3 rcm = {}) {
    MechanismConfig c;
    c.rcm_point = rcm;
    c.limit_alpha = c.limit_beta = deg_to_rad(limit_deg);
    c.insertion = {dmin, dmax};
    c.parallelogram_height = 60.0;
    return c;
}

std::string read(const std::string& name) {
    std::ifstream in(std::string(RCM_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

EarWorkspace mean_ear() {
    return ear_workspace_from_stats(parse_measurements<EarMeasurement>(read("table1_ear.csv")).records,
                                    Statistic::Mean);
}

SinusWorkspace mean_sinus() {
    return sinus_workspace_from_stats(parse_measurements<SinusMeasurement>(read("table2_sinus.csv")).records,
                                      Statistic::Mean);
}

// Direct geometric reachability in degrees, written without the library's
// aiming code.
bool brute_force_reachable(const Vec3& p, double limit_deg, double dmin, double dmax) {
    const double d = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    if (d < 1e-9 || p.z <= 0) return false;
    const double alpha_deg = std::atan(std::abs(p.y) / p.z) * 180.0 / kPi;
    const double beta_deg = std::asin(std::abs(p.x) / d) * 180.0 / kPi;
    return alpha_deg <= limit_deg + 1e-9 && beta_deg <= limit_deg + 1e-9 && d >= dmin && d <= dmax;
}

double exact_apex(const PointCloud& dirs) {
    double best = 0.0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            const Vec3 a = dirs[i], b = dirs[j];
            best = std::max(best, std::atan2(a.cross(b).norm(), a.dot(b)));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("reachability examples") {
    const MechanismConfig c = make_config(45, 5, 50);
    const ReachabilityReport on_axis = reachability(c, {0, 0, 20});
    CHECK(on_axis.reachable);
    CHECK(on_axis.failures == simd::kReachable);
    CHECK(rad_to_deg(on_axis.limits->alpha_margin) == doctest::Approx(45));
    CHECK(rad_to_deg(on_axis.limits->beta_margin) == doctest::Approx(45));
    CHECK(*on_axis.singularity_margin == kPi);
    CHECK(*on_axis.dexterity == doctest::Approx(1.0).epsilon(1e-6));

    const Vec3 at50 = direction_vector(OrientationAngles::from_degrees(50, 0)).vec() * 20.0;
    const ReachabilityReport tilted = reachability(c, at50);
    CHECK_FALSE(tilted.reachable);
    CHECK(tilted.failures == simd::kFailAlpha);
    CHECK(rad_to_deg(tilted.alpha_deficit) == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(tilted.beta_deficit == 0.0);
    CHECK(failure_reason(tilted.failures) == "alpha");

    const ReachabilityReport deep = reachability(c, {0, 0, 51});
    CHECK_FALSE(deep.reachable);
    CHECK(deep.failures == simd::kFailDepthHigh);
    CHECK(failure_reason(reachability(c, {0, 0, 4}).failures) == "depth_min");
}

TEST_CASE("unreachable-with-reason for degenerate and rear targets") {
    const MechanismConfig c = make_config(45, 0, 50, {1, 1, 1});
    const ReachabilityReport deg = reachability(c, {1, 1, 1});
    CHECK(deg.failures == simd::kFailDegenerate);
    CHECK_FALSE(deg.aim.has_value());
    CHECK(failure_reason(reachability(c, {1, 1, 0}).failures) == "behind");
    CHECK(failure_reason(simd::kFailAlpha | simd::kFailBeta | simd::kFailDepthHigh) == "alpha|beta|depth_max");
}

TEST_CASE("a target exactly on the limit is admissible") {
    const MechanismConfig c = make_config(45, 0, 50);
    CHECK(reachability(c, {0, -10, 10}).reachable);
    CHECK(reachability(c, {10, 0, 10}).failures == simd::kReachable);
}

TEST_CASE("near-zero limits reach only on-axis points") {
    MechanismConfig c = make_config(45, 0, 100);
    c.limit_alpha = c.limit_beta = 1e-6;
    const PointCloud targets = sample_targets(mean_ear(), 1.0);
    const CoverageResult r = coverage(c, targets);
    std::size_t on_axis = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const bool axis = targets.x[i] == 0.0 && targets.y[i] == 0.0;
        on_axis += axis;
        CHECK(r.points[i].reachable == axis);
    }
    CHECK(on_axis > 0);
    CHECK(r.fraction == doctest::Approx(static_cast<double>(on_axis) / targets.size()));
}

TEST_CASE("nearly 90 degree limits cover the whole ear workspace") {
    const EarWorkspace w = mean_ear();
    const MechanismConfig c = make_config(89.9, 0, 100);
    const PointCloud targets = sample_targets(w, 1.0);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        CHECK(brute_force_reachable(targets[i], 89.9, 0, 100));
    }
    CHECK(coverage(c, targets).fraction == 1.0);
    CHECK(coverage_fraction(c, targets) == 1.0);
}

TEST_CASE("sinus coverage at 45 degrees matches the brute-force oracle") {
    const MechanismConfig c = make_config(45, 0, 110);
    const PointCloud targets = sample_targets(mean_sinus(), SeptumMode::Merged, 2.0);
    std::size_t oracle = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) oracle += brute_force_reachable(targets[i], 45, 0, 110);
    const CoverageResult r = coverage(c, targets);
    CHECK(r.reachable == oracle);
    CHECK(coverage_fraction(c, targets) == r.fraction);
    MESSAGE("sinus coverage at +/-45 deg: " << r.fraction);
    CHECK(r.fraction > 0.5);
    CHECK(r.fraction < 1.0);
}

TEST_CASE("coverage fraction equals the mean of per-point flags and the kernel count") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> lim(1.0, 89.0), d(0.0, 30.0), off(-5.0, 5.0);
    const PointCloud ear = sample_targets(mean_ear(), 1.0, 3);
    for (int trial = 0; trial < 25; ++trial) {
        const double dmin = d(rng);
        MechanismConfig c = make_config(lim(rng), dmin, dmin + d(rng) + 1.0, {off(rng), off(rng), off(rng)});
        c.limit_beta = deg_to_rad(lim(rng));
        const CoverageResult r = coverage(c, ear);
        const auto n = std::count_if(r.points.begin(), r.points.end(), [](const auto& p) { return p.reachable; });
        CHECK(r.fraction == static_cast<double>(n) / ear.size());
        CHECK(coverage_fraction(c, ear) == r.fraction);
    }
}

TEST_CASE("coverage is monotone in nested limits and insertion ranges") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lim(1.0, 80.0), d(0.0, 20.0);
    const PointCloud sinus = sample_targets(mean_sinus(), SeptumMode::Merged, 4.0, 8);
    for (int trial = 0; trial < 30; ++trial) {
        const double a = lim(rng), b = lim(rng), dmin = d(rng), dmax = dmin + 1.0 + 5.0 * d(rng);
        MechanismConfig inner = make_config(a, dmin, dmax);
        inner.limit_beta = deg_to_rad(b);
        MechanismConfig outer = inner;
        outer.limit_alpha = std::min(deg_to_rad(89.0), inner.limit_alpha + deg_to_rad(d(rng)));
        outer.limit_beta = std::min(deg_to_rad(89.0), inner.limit_beta + deg_to_rad(d(rng)));
        outer.insertion.min_mm = std::max(0.0, dmin - d(rng));
        outer.insertion.max_mm = dmax + d(rng);
        CHECK(coverage_fraction(outer, sinus) >= coverage_fraction(inner, sinus));
    }
}

TEST_CASE("coverage is deterministic") {
    const MechanismConfig c = make_config(30, 0, 40);
    const PointCloud t = sample_targets(mean_ear(), 0.9, 17);
    const CoverageResult a = coverage(c, t), b = coverage(c, t);
    CHECK(a.fraction == b.fraction);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].failures == b.points[i].failures);
}

TEST_CASE("required span examples") {
    PointCloud one;
    one.push_back({0, 0, 10});
    const SpanReport s1 = required_span(one, {});
    CHECK(s1.max_abs_alpha == 0.0);
    CHECK(s1.max_abs_beta == 0.0);
    CHECK(s1.apex == 0.0);

    PointCloud two;
    two.push_back({10, 0, 10});
    two.push_back({-10, 0, 10});
    const SpanReport s2 = required_span(two, {});
    CHECK(rad_to_deg(s2.apex) == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(rad_to_deg(s2.max_abs_beta) == doctest::Approx(45.0).epsilon(1e-12));
    CHECK(s2.max_abs_alpha == 0.0);
    CHECK(s2.apex_exact);

    CHECK_THROWS_AS(required_span(PointCloud{}, {}), EmptyInput);
    PointCloud behind;
    behind.push_back({0, 0, -1});
    CHECK_THROWS_AS(required_span(behind, {}), DomainError);
}

TEST_CASE("required span: apex bounds the largest off-axis angle when the axis is sampled") {
    const PointCloud ear = sample_targets(mean_ear(), 1.0);
    const SpanReport s = required_span(ear, {});
    CHECK(s.apex >= s.max_off_axis);
    CHECK(s.apex >= std::max(s.max_abs_alpha, s.max_abs_beta));
}

TEST_CASE("exact apex agrees with the brute-force pairwise oracle") {
    const PointCloud t = sample_targets(mean_sinus(), SeptumMode::Intact, 6.0, 2);
    REQUIRE(t.size() <= kExactApexLimit);
    PointCloud dirs;
    for (std::size_t i = 0; i < t.size(); ++i) dirs.push_back(t[i] * (1.0 / t[i].norm()));
    bool exact = false;
    const double apex = apex_angle(dirs, &exact);
    CHECK(exact);
    CHECK(apex == doctest::Approx(exact_apex(dirs)).epsilon(1e-9));
}

TEST_CASE("reduced apex search stays close to the exhaustive value") {
    const PointCloud t = sample_targets(mean_ear(), 0.6);
    REQUIRE(t.size() > kExactApexLimit);
    PointCloud dirs;
    for (std::size_t i = 0; i < t.size(); ++i) dirs.push_back(t[i] * (1.0 / t[i].norm()));
    bool exact = true;
    const double approx = apex_angle(dirs, &exact);
    const double full = exact_apex(dirs);
    CHECK_FALSE(exact);
    CHECK(approx <= full + 1e-12);
    CHECK(full - approx < deg_to_rad(0.5));
}

TEST_CASE("orientation map") {
    const MechanismConfig c = make_config(45, 0, 50);
    const OrientationMap m2 = orientation_map(c, 2, 2);
    CHECK(m2.cells.size() == 4);
    for (const auto& cell : m2.cells) {
        CHECK(cell.admissible);
        CHECK(cell.singularity_margin > 0.0);
    }
    CHECK(rad_to_deg(m2.at(1, 1).alpha) == doctest::Approx(45));

    const OrientationMap m3 = orientation_map(c, 3, 5);
    CHECK(m3.at(1, 2).alpha == 0.0);
    CHECK(m3.at(1, 2).beta == 0.0);
    CHECK(std::abs(m3.at(1, 2).dexterity - 1.0) < 1e-6);

    const OrientationMap m91 = orientation_map(c, 91, 91);
    double min_margin = kPi;
    for (const auto& cell : m91.cells) {
        CHECK(cell.admissible);
        min_margin = std::min(min_margin, cell.singularity_margin);
    }
    CHECK(min_margin >= kPi / 2);

    CHECK_THROWS_AS(orientation_map(c, 1, 5), DomainError);
}
