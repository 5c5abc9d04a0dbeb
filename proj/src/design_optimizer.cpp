#include "rcm/design_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rcm/errors.hpp"
#include "rcm/parallel.hpp"
#include "rcm/workspace_analysis.hpp"

namespace rcm {

namespace {

constexpr std::size_t kDims = 4;
using Point = std::array<double, kDims>;

Point to_point(const DesignVariables& v) {
    return {v.rcm_offset.x, v.rcm_offset.y, v.rcm_offset.z, v.parallelogram_height};
}

DesignVariables to_vars(const Point& p) { return {{p[0], p[1], p[2]}, p[3]}; }

Point lower(const DesignBounds& b) { return {b.offset_min.x, b.offset_min.y, b.offset_min.z, b.height_min}; }
Point upper(const DesignBounds& b) { return {b.offset_max.x, b.offset_max.y, b.offset_max.z, b.height_max}; }

struct Scored {
    Point x{};
    double coverage = 0.0;
    double objective = 0.0;
    double distance2 = 0.0;  // squared distance to the template design
};

// Strict order: higher objective first, then closer to the template.
bool better(const Scored& a, const Scored& b) {
    if (a.objective != b.objective) return a.objective > b.objective;
    return a.distance2 < b.distance2;
}

class Evaluator {
public:
    Evaluator(const MechanismConfig& tmpl, const PointCloud& targets, const OptimizerOptions& options,
              OptimizationReport& report)
        : tmpl_(tmpl), targets_(targets), options_(options), report_(report) {}

    std::size_t remaining() const { return options_.budget - report_.evaluations; }

    Scored score(const Point& x) const {
        Scored s;
        s.x = x;
        std::tie(s.coverage, s.objective) = evaluate_design(tmpl_, targets_, to_vars(x), options_.penalty_weight);
        const Point t = to_point({{}, tmpl_.parallelogram_height});
        for (std::size_t k = 0; k < kDims; ++k) s.distance2 += (x[k] - t[k]) * (x[k] - t[k]);
        return s;
    }

    // Appends to the history and updates the incumbent.
    void record(const Scored& s) {
        ++report_.evaluations;
        if (report_.evaluations == 1 || better(s, incumbent_)) {
            incumbent_ = s;
            report_.best = to_vars(s.x);
            report_.best_coverage = s.coverage;
            report_.best_objective = s.objective;
        }
        report_.history.push_back({report_.evaluations, to_vars(s.x), s.coverage, s.objective,
                                   incumbent_.coverage, incumbent_.objective});
    }

    Scored evaluate(const Point& x) {
        Scored s = score(x);
        record(s);
        return s;
    }

    const Scored& incumbent() const { return incumbent_; }

private:
    const MechanismConfig& tmpl_;
    const PointCloud& targets_;
    const OptimizerOptions& options_;
    OptimizationReport& report_;
    Scored incumbent_;
};

Point lattice_point(const DesignBounds& b, std::size_t index) {
    const Point lo = lower(b), hi = upper(b);
    Point x{};
    // Height varies fastest, offset x slowest.
    for (std::size_t k = kDims; k-- > 0;) {
        const std::size_t n = b.lattice[k];
        const std::size_t i = index % n;
        index /= n;
        x[k] = n == 1 ? 0.5 * (lo[k] + hi[k])
                      : lo[k] + (hi[k] - lo[k]) * static_cast<double>(i) / static_cast<double>(n - 1);
        if (n > 1 && i == n - 1) x[k] = hi[k];
    }
    return x;
}

Point clamp_point(Point x, const Point& lo, const Point& hi) {
    for (std::size_t k = 0; k < kDims; ++k) x[k] = std::clamp(x[k], lo[k], hi[k]);
    return x;
}

void run_simplex(Evaluator& eval, const DesignBounds& b, const OptimizerOptions& o, OptimizationReport& report) {
    const Point lo = lower(b), hi = upper(b);
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < kDims; ++k) {
        if (hi[k] > lo[k]) active.push_back(k);
    }
    if (active.empty()) {
        report.converged = true;
        return;
    }

    // Initial simplex around the grid optimum, one vertex per active axis
    // offset by half a lattice pitch (a quarter of the range when the axis
    // has a single lattice point).
    std::vector<Scored> simplex{eval.incumbent()};
    for (std::size_t k : active) {
        if (eval.remaining() == 0) {
            report.budget_exhausted = true;
            return;
        }
        const double range = hi[k] - lo[k];
        const double step = b.lattice[k] > 1 ? 0.5 * range / static_cast<double>(b.lattice[k] - 1) : 0.25 * range;
        Point x = simplex.front().x;
        x[k] = x[k] + step <= hi[k] ? x[k] + step : x[k] - step;
        simplex.push_back(eval.evaluate(clamp_point(x, lo, hi)));
    }

    const std::size_t n = active.size();
    const auto order = [&] { std::stable_sort(simplex.begin(), simplex.end(), better); };
    const auto diameter = [&] {
        double d = 0.0;
        for (std::size_t v = 1; v <= n; ++v) {
            double s = 0.0;
            for (std::size_t k = 0; k < kDims; ++k) {
                const double e = simplex[v].x[k] - simplex[0].x[k];
                s += e * e;
            }
            d = std::max(d, std::sqrt(s));
        }
        return d;
    };
    const auto along = [&](const Point& from, const Point& to, double t) {
        Point x{};
        for (std::size_t k = 0; k < kDims; ++k) x[k] = from[k] + t * (to[k] - from[k]);
        return clamp_point(x, lo, hi);
    };

    while (true) {
        order();
        if (diameter() < o.convergence_diameter) {
            report.converged = true;
            return;
        }
        if (eval.remaining() == 0) {
            report.budget_exhausted = true;
            return;
        }
        Point centroid{};
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t k = 0; k < kDims; ++k) centroid[k] += simplex[v].x[k] / static_cast<double>(n);
        }
        Scored& worst = simplex[n];
        const Scored reflected = eval.evaluate(along(centroid, worst.x, -o.reflection));

        if (better(reflected, simplex[0])) {
            if (eval.remaining() == 0) {
                worst = reflected;
                continue;
            }
            const Scored expanded = eval.evaluate(along(centroid, reflected.x, o.expansion));
            worst = better(expanded, reflected) ? expanded : reflected;
            continue;
        }
        if (better(reflected, simplex[n - 1])) {
            worst = reflected;
            continue;
        }
        if (eval.remaining() == 0) continue;
        const bool outside = better(reflected, worst);
        const Scored contracted =
            eval.evaluate(along(centroid, outside ? reflected.x : worst.x, o.contraction));
        if (better(contracted, outside ? reflected : worst)) {
            worst = contracted;
            continue;
        }
        for (std::size_t v = 1; v <= n; ++v) {
            if (eval.remaining() == 0) break;
            simplex[v] = eval.evaluate(along(simplex[0].x, simplex[v].x, o.shrink));
        }
    }
}

}  // namespace

void DesignBounds::validate(const MechanismConfig& design_template) const {
    const Point lo = lower(*this), hi = upper(*this);
    for (std::size_t k = 0; k < kDims; ++k) {
        if (!(std::isfinite(lo[k]) && std::isfinite(hi[k]) && lo[k] <= hi[k])) {
            throw InfeasibleBounds("design bound " + std::to_string(k) + " is empty or not finite");
        }
        if (lattice[k] == 0) throw InfeasibleBounds("lattice needs at least one point per variable");
    }
    if (!(height_min > 0.0)) throw InfeasibleBounds("minimum parallelogram height must be positive");
    // The insertion surrogate is linear, so checking both ends suffices.
    with_parallelogram_height(design_template, height_min);
    with_parallelogram_height(design_template, height_max);
}

MechanismConfig apply_design(const MechanismConfig& design_template, const DesignVariables& vars) {
    MechanismConfig c = with_parallelogram_height(design_template, vars.parallelogram_height);
    c.rcm_point = design_template.rcm_point + vars.rcm_offset;
    return c;
}

std::pair<double, double> evaluate_design(const MechanismConfig& design_template, const PointCloud& targets,
                                          const DesignVariables& vars, double penalty_weight) {
    const MechanismConfig config = apply_design(design_template, vars);
    if (penalty_weight == 0.0) {
        const double c = coverage_fraction(config, targets);
        return {c, c};
    }
    const CoverageResult full = coverage(config, targets);
    double excess = 0.0;
    std::size_t counted = 0;
    for (const ReachabilityReport& r : full.points) {
        if (r.dexterity) {
            excess += *r.dexterity - 1.0;
            ++counted;
        }
    }
    const double penalty = counted ? excess / static_cast<double>(counted) : 0.0;
    return {full.fraction, full.fraction - penalty_weight * penalty};
}

OptimizationReport optimize(const MechanismConfig& design_template, const PointCloud& targets,
                            const DesignBounds& bounds, const OptimizerOptions& options) {
    design_template.validate();
    bounds.validate(design_template);
    if (options.budget == 0) throw InfeasibleBounds("evaluation budget must be at least 1");

    OptimizationReport report;
    report.method = options.method;
    report.baseline_coverage = coverage_fraction(design_template, targets);
    Evaluator eval(design_template, targets, options, report);

    const std::size_t lattice_size = std::accumulate(bounds.lattice.begin(), bounds.lattice.end(),
                                                     std::size_t{1}, std::multiplies<>());
    const std::size_t grid_evals = std::min(lattice_size, options.budget);
    std::vector<Scored> scored(grid_evals);
    parallel_for(grid_evals, options.threads,
                 [&](std::size_t i) { scored[i] = eval.score(lattice_point(bounds, i)); });
    for (const Scored& s : scored) eval.record(s);

    if (grid_evals < lattice_size) {
        report.budget_exhausted = true;
        return report;
    }
    if (options.method == OptimizerMethod::Simplex) run_simplex(eval, bounds, options, report);
    return report;
}

std::vector<std::pair<double, double>> sensitivity(const MechanismConfig& design_template,
                                                   const PointCloud& targets, DesignVariable variable,
                                                   std::span<const double> deltas) {
    std::vector<std::pair<double, double>> out;
    out.reserve(deltas.size());
    for (double delta : deltas) {
        if (!std::isfinite(delta)) throw DomainError("sensitivity deltas must be finite");
        DesignVariables v{{}, design_template.parallelogram_height};
        switch (variable) {
            case DesignVariable::OffsetX: v.rcm_offset.x = delta; break;
            case DesignVariable::OffsetY: v.rcm_offset.y = delta; break;
            case DesignVariable::OffsetZ: v.rcm_offset.z = delta; break;
            case DesignVariable::Height: v.parallelogram_height += delta; break;
        }
        out.emplace_back(delta, coverage_fraction(apply_design(design_template, v), targets));
    }
    return out;
}

}  // namespace rcm
