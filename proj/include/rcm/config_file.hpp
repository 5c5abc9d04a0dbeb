#pragma once

// Flat `key = value` configuration: one entry per line, '#' starts a
// comment, vectors are comma-separated. Angles are in degrees, lengths in
// millimetres.
//
// Required: rcm_point_mm, limit_alpha_deg, limit_beta_deg,
//           insertion_min_mm, insertion_max_mm, parallelogram_height_mm
// Optional: height_to_dmax_gain (1), opt_offset_min_mm (-5,-5,-5),
//           opt_offset_max_mm (5,5,5), opt_height_min_mm and
//           opt_height_max_mm (parallelogram height), opt_lattice (3,3,3,1),
//           opt_method (grid|simplex, grid), opt_budget (100),
//           opt_penalty_weight (0)

#include <cstddef>
#include <filesystem>
#include <string_view>

#include "rcm/design_optimizer.hpp"
#include "rcm/rcm_mechanism.hpp"

namespace rcm {

struct ToolConfig {
    MechanismConfig mechanism;
    DesignBounds bounds;
    OptimizerMethod method = OptimizerMethod::Grid;
    std::size_t budget = 100;
    double penalty_weight = 0.0;
};

// Throws ConfigError naming the offending key (or "line N").
ToolConfig parse_config(std::string_view text);
ToolConfig load_config(const std::filesystem::path& path);

}  // namespace rcm
