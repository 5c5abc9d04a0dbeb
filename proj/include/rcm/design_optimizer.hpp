#pragma once

// Placement of the remote center (Cartesian positioning travel) and choice
// of parallelogram height that maximize coverage of a frozen target set.

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rcm/point_cloud.hpp"
#include "rcm/rcm_mechanism.hpp"

namespace rcm {

struct DesignVariables {
    Vec3 rcm_offset;                    // mm, added to the template remote center
    double parallelogram_height = 0.0;  // mm

    bool operator==(const DesignVariables&) const = default;
};

struct DesignBounds {
    Vec3 offset_min;
    Vec3 offset_max;
    double height_min = 0.0;
    double height_max = 0.0;
    // Lattice points per variable (x, y, z, height) for the grid method. A
    // variable with a single lattice point sits at the middle of its bounds.
    std::array<std::size_t, 4> lattice{3, 3, 3, 1};

    // Throws InfeasibleBounds.
    void validate(const MechanismConfig& design_template) const;
};

enum class OptimizerMethod { Grid, Simplex };

struct OptimizerOptions {
    OptimizerMethod method = OptimizerMethod::Grid;
    std::size_t budget = 100;   // objective evaluations, >= 1
    double penalty_weight = 0.0;  // weight of the mean dexterity excess over reachable targets
    unsigned threads = 0;       // grid evaluation workers; 0 = hardware concurrency
    double convergence_diameter = 0.01;  // mm

    // Downhill-simplex coefficients.
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
};

struct HistoryEntry {
    std::size_t iteration = 0;  // 1-based evaluation index
    DesignVariables variables;
    double coverage = 0.0;
    double objective = 0.0;
    double incumbent_coverage = 0.0;
    double incumbent_objective = 0.0;
};

struct OptimizationReport {
    OptimizerMethod method = OptimizerMethod::Grid;
    DesignVariables best;
    double best_coverage = 0.0;
    double best_objective = 0.0;
    double baseline_coverage = 0.0;  // template design, not counted as an evaluation
    std::vector<HistoryEntry> history;
    std::size_t evaluations = 0;
    bool budget_exhausted = false;
    bool converged = false;
};

MechanismConfig apply_design(const MechanismConfig& design_template, const DesignVariables& vars);

// Coverage minus penalty_weight times the mean dexterity excess (dexterity - 1)
// over reachable targets. Returns {coverage, objective}.
std::pair<double, double> evaluate_design(const MechanismConfig& design_template, const PointCloud& targets,
                                          const DesignVariables& vars, double penalty_weight);

// Grid: exhaustive over the lattice (first `budget` lattice points when the
// lattice is larger, flagged as budget_exhausted). Simplex: the grid phase
// followed by downhill-simplex refinement from the grid optimum, sharing
// the budget. Ties keep the design closest to the template.
OptimizationReport optimize(const MechanismConfig& design_template, const PointCloud& targets,
                            const DesignBounds& bounds, const OptimizerOptions& options);

enum class DesignVariable { OffsetX, OffsetY, OffsetZ, Height };

// Coverage with one variable perturbed from the template design by each delta.
std::vector<std::pair<double, double>> sensitivity(const MechanismConfig& design_template,
                                                   const PointCloud& targets, DesignVariable variable,
                                                   std::span<const double> deltas);

}  // namespace rcm
