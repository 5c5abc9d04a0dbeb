#pragma once

// Plot-ready CSV outputs. Numbers use the shortest representation that
// parses back to the same double.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rcm/design_optimizer.hpp"
#include "rcm/point_cloud.hpp"
#include "rcm/workspace_analysis.hpp"

namespace rcm {

inline constexpr std::string_view kMapCsvHeader = "alpha_deg,beta_deg,admissible,singularity_margin_rad,dexterity";
inline constexpr std::string_view kCoverageCsvHeader =
    "x_mm,y_mm,z_mm,reachable,fail_reason,alpha_deg,beta_deg,depth_mm";
inline constexpr std::string_view kOptimizationCsvHeader =
    "iteration,offset_x_mm,offset_y_mm,offset_z_mm,parallelogram_height_mm,coverage,objective,"
    "incumbent_coverage,incumbent_objective";

std::string format_number(double v);

// One map cell as written to disk (angles in degrees).
struct MapRow {
    double alpha_deg = 0.0;
    double beta_deg = 0.0;
    bool admissible = false;
    double singularity_margin_rad = 0.0;
    double dexterity = 0.0;

    bool operator==(const MapRow&) const = default;
};

std::vector<MapRow> map_rows(const OrientationMap& map);
std::string write_map_csv(const OrientationMap& map);
// Throws ParseError.
std::vector<MapRow> parse_map_csv(std::string_view text);

std::string write_coverage_csv(const PointCloud& targets, const CoverageResult& result);
std::string write_optimization_csv(const OptimizationReport& report);

// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace rcm
