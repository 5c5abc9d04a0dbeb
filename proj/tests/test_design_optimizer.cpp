#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rcm/anatomy_model.hpp"
#include "rcm/design_optimizer.hpp"
#include "rcm/errors.hpp"
#include "rcm/units.hpp"
#include "rcm/workspace_analysis.hpp"

using namespace rcm;

namespace {

std::string read(const std::string& name) {
    std::ifstream in(std::string(RCM_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PointCloud ear_targets(double step = 1.0) {
    const auto table = parse_measurements<EarMeasurement>(read("table1_ear.csv"));
    return sample_targets(ear_workspace_from_stats(table.records, Statistic::Mean), step);
}

MechanismConfig make_template(double limit_deg, double dmax) {
    MechanismConfig c;
    c.limit_alpha = c.limit_beta = deg_to_rad(limit_deg);
    c.insertion = {0.0, dmax};
    c.parallelogram_height = 60.0;
    return c;
}

DesignBounds offset_bounds(double half, std::size_t per_axis) {
    DesignBounds b;
    b.offset_min = {-half, -half, -half};
    b.offset_max = {half, half, half};
    b.height_min = b.height_max = 60.0;
    b.lattice = {per_axis, per_axis, per_axis, 1};
    return b;
}

// Ear workspace moved 5 mm sideways, seen through tight joint limits.
struct ShiftedCase {
    MechanismConfig tmpl = make_template(20.0, 45.0);
    PointCloud targets = translated(ear_targets(), {5.0, 0.0, 0.0});
    DesignBounds bounds = offset_bounds(5.0, 3);
};

}  // namespace

TEST_CASE("centered workspace keeps the template design") {
    const MechanismConfig tmpl = make_template(89.0, 100.0);
    const PointCloud targets = ear_targets();
    OptimizerOptions o;
    const OptimizationReport r = optimize(tmpl, targets, offset_bounds(5.0, 3), o);
    CHECK(r.baseline_coverage == 1.0);
    CHECK(r.best_coverage == 1.0);
    CHECK(r.best.rcm_offset == Vec3{0, 0, 0});
    CHECK(r.best.parallelogram_height == 60.0);
    CHECK(r.evaluations == 27);
    CHECK_FALSE(r.budget_exhausted);
}

TEST_CASE("grid search recovers a shifted workspace") {
    const ShiftedCase s;
    OptimizerOptions o;
    const OptimizationReport r = optimize(s.tmpl, s.targets, s.bounds, o);
    MESSAGE("baseline " << r.baseline_coverage << " best " << r.best_coverage);
    CHECK(r.best_coverage > r.baseline_coverage);
    CHECK(r.best.rcm_offset.x == 5.0);

    // Independent scan of the same 27 lattice points.
    double lattice_best = 0.0;
    for (double x : {-5.0, 0.0, 5.0}) {
        for (double y : {-5.0, 0.0, 5.0}) {
            for (double z : {-5.0, 0.0, 5.0}) {
                MechanismConfig c = s.tmpl;
                c.rcm_point = {x, y, z};
                lattice_best = std::max(lattice_best, coverage_fraction(c, s.targets));
            }
        }
    }
    CHECK(r.best_coverage == lattice_best);

    // Exhaustive 1 mm scan of the box bounds the achievable coverage.
    double dense_best = 0.0;
    for (int x = -5; x <= 5; ++x) {
        for (int y = -5; y <= 5; ++y) {
            for (int z = -5; z <= 5; ++z) {
                MechanismConfig c = s.tmpl;
                c.rcm_point = {double(x), double(y), double(z)};
                dense_best = std::max(dense_best, coverage_fraction(c, s.targets));
            }
        }
    }
    CHECK(r.best_coverage <= dense_best);
}

TEST_CASE("simplex refinement never loses to the grid phase") {
    const ShiftedCase s;
    OptimizerOptions grid;
    OptimizerOptions simplex;
    simplex.method = OptimizerMethod::Simplex;
    simplex.budget = 150;
    const OptimizationReport g = optimize(s.tmpl, s.targets, s.bounds, grid);
    const OptimizationReport x = optimize(s.tmpl, s.targets, s.bounds, simplex);
    CHECK(x.best_objective >= g.best_objective);
    CHECK(x.evaluations <= simplex.budget);
    CHECK((x.converged || x.budget_exhausted));
    for (std::size_t i = 0; i < g.history.size(); ++i) {
        CHECK(x.history[i].variables == g.history[i].variables);
        CHECK(x.history[i].objective == g.history[i].objective);
    }
}

TEST_CASE("history is consistent and the incumbent never worsens") {
    const ShiftedCase s;
    OptimizerOptions o;
    o.method = OptimizerMethod::Simplex;
    o.budget = 80;
    const OptimizationReport r = optimize(s.tmpl, s.targets, s.bounds, o);
    REQUIRE(r.history.size() == r.evaluations);
    double best = r.history.front().objective;
    for (std::size_t i = 0; i < r.history.size(); ++i) {
        const HistoryEntry& h = r.history[i];
        CHECK(h.iteration == i + 1);
        best = std::max(best, h.objective);
        CHECK(h.incumbent_objective == best);
        if (i > 0) CHECK(h.incumbent_objective >= r.history[i - 1].incumbent_objective);
        for (int k = 0; k < 3; ++k) {
            const double v = k == 0 ? h.variables.rcm_offset.x : k == 1 ? h.variables.rcm_offset.y : h.variables.rcm_offset.z;
            CHECK(v >= -5.0);
            CHECK(v <= 5.0);
        }
        // Reported coverage is the coverage of the recorded design.
        CHECK(h.coverage == evaluate_design(s.tmpl, s.targets, h.variables, 0.0).first);
    }
    CHECK(r.best_objective == best);
}

TEST_CASE("budget of one evaluates exactly one design") {
    const ShiftedCase s;
    OptimizerOptions o;
    o.budget = 1;
    const OptimizationReport r = optimize(s.tmpl, s.targets, s.bounds, o);
    CHECK(r.evaluations == 1);
    CHECK(r.history.size() == 1);
    CHECK(r.budget_exhausted);
    o.method = OptimizerMethod::Simplex;
    CHECK(optimize(s.tmpl, s.targets, s.bounds, o).evaluations == 1);
}

TEST_CASE("optimization is reproducible and independent of worker count") {
    const ShiftedCase s;
    OptimizerOptions o;
    o.method = OptimizerMethod::Simplex;
    o.budget = 60;
    o.threads = 1;
    const OptimizationReport a = optimize(s.tmpl, s.targets, s.bounds, o);
    o.threads = 7;
    const OptimizationReport b = optimize(s.tmpl, s.targets, s.bounds, o);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].variables == b.history[i].variables);
        CHECK(a.history[i].objective == b.history[i].objective);
    }
    CHECK(a.best == b.best);
}

TEST_CASE("dexterity penalty lowers the objective but not the coverage") {
    const ShiftedCase s;
    const DesignVariables v{{1.0, 0.0, 0.0}, 60.0};
    const auto plain = evaluate_design(s.tmpl, s.targets, v, 0.0);
    const auto penalized = evaluate_design(s.tmpl, s.targets, v, 0.5);
    CHECK(plain.first == plain.second);
    CHECK(penalized.first == plain.first);
    CHECK(penalized.second < penalized.first);
}

TEST_CASE("infeasible bounds are rejected") {
    const ShiftedCase s;
    OptimizerOptions o;
    DesignBounds b = s.bounds;
    b.offset_min.y = 1.0;
    b.offset_max.y = -1.0;
    CHECK_THROWS_AS(optimize(s.tmpl, s.targets, b, o), InfeasibleBounds);
    b = s.bounds;
    b.height_min = 0.0;
    CHECK_THROWS_AS(optimize(s.tmpl, s.targets, b, o), InfeasibleBounds);
    b = s.bounds;
    b.lattice[2] = 0;
    CHECK_THROWS_AS(optimize(s.tmpl, s.targets, b, o), InfeasibleBounds);
    b = s.bounds;
    // Height so low the surrogate insertion range collapses.
    b.height_min = 1.0;
    CHECK_THROWS_AS(optimize(s.tmpl, s.targets, b, o), InfeasibleBounds);
    o.budget = 0;
    CHECK_THROWS_AS(optimize(s.tmpl, s.targets, s.bounds, o), InfeasibleBounds);
}

TEST_CASE("sensitivity sweeps") {
    const ShiftedCase s;
    const std::array<double, 1> zero{0.0};
    const auto at_zero = sensitivity(s.tmpl, s.targets, DesignVariable::OffsetX, zero);
    REQUIRE(at_zero.size() == 1);
    CHECK(at_zero[0].second == coverage_fraction(s.tmpl, s.targets));

    // The unshifted ear workspace is mirror-symmetric in y.
    const PointCloud centered = ear_targets();
    const std::array<double, 2> sym{-2.0, 2.0};
    const auto ys = sensitivity(s.tmpl, centered, DesignVariable::OffsetY, sym);
    CHECK(ys[0].second == ys[1].second);

    const std::array<double, 4> heights{-20.0, -10.0, 0.0, 10.0};
    MechanismConfig short_reach = s.tmpl;
    short_reach.limit_alpha = short_reach.limit_beta = deg_to_rad(60.0);
    short_reach.insertion.max_mm = 30.0;
    const auto hs = sensitivity(short_reach, centered, DesignVariable::Height, heights);
    for (std::size_t i = 1; i < hs.size(); ++i) CHECK(hs[i].second >= hs[i - 1].second);
    CHECK(hs.back().second > hs.front().second);
}
