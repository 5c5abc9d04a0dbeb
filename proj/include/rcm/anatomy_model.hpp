#pragma once

// Anatomical target regions and the scan measurement tables they are built
// from.
//
// Frames: the ear model has the remote center at the entrance of the
// external auditory canal with the canal running along +z; the sinus model
// has it at the center of the piriform orifice with +z pointing posteriorly,
// +y toward the roof and +x toward the right lateral wall. Target regions
// are half-open in z: the plane z = 0 through the remote center is excluded.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcm/point_cloud.hpp"
#include "rcm/vec3.hpp"

namespace rcm {

enum class MeasurementKind { Ear, Sinus };

// One row of the petrous bone scan table. Lengths in mm, age in years.
struct EarMeasurement {
    enum class Column : std::size_t {
        Age,
        CaeDiameterLateral,
        CaeDiameterSulcus,
        CaeLength,
        OmHeight,
        OmWidth,
        OmApLength,
    };
    static constexpr std::size_t kColumnCount = 7;
    static constexpr std::array<std::string_view, kColumnCount> kHeader = {
        "age",          "cae_diameter_lateral_mm", "cae_diameter_sulcus_mm", "cae_length_mm",
        "om_height_mm", "om_width_mm",             "om_ap_length_mm"};
    static constexpr MeasurementKind kKind = MeasurementKind::Ear;

    double age = 0.0;
    double cae_diameter_lateral = 0.0;
    double cae_diameter_sulcus = 0.0;
    double cae_length = 0.0;
    double om_height = 0.0;
    double om_width = 0.0;
    double om_ap_length = 0.0;

    std::array<double, kColumnCount> values() const noexcept;
    static EarMeasurement from_values(const std::array<double, kColumnCount>& v) noexcept;
    bool operator==(const EarMeasurement&) const = default;
};

// One row of the paranasal sinus scan table.
struct SinusMeasurement {
    enum class Column : std::size_t {
        Age,
        PiriformPosterior,
        RightLateralSeptum,
        LeftLateralSeptum,
        FloorRoof,
        RightMeatusSeptum,
        LeftMeatusSeptum,
        PiriformHeight,
    };
    static constexpr std::size_t kColumnCount = 8;
    static constexpr std::array<std::string_view, kColumnCount> kHeader = {
        "age",
        "piriform_posterior_mm",
        "right_lateral_septum_mm",
        "left_lateral_septum_mm",
        "floor_roof_mm",
        "right_meatus_septum_mm",
        "left_meatus_septum_mm",
        "piriform_height_mm"};
    static constexpr MeasurementKind kKind = MeasurementKind::Sinus;

    double age = 0.0;
    double piriform_posterior = 0.0;
    double right_lateral_septum = 0.0;
    double left_lateral_septum = 0.0;
    double floor_roof = 0.0;
    double right_meatus_septum = 0.0;
    double left_meatus_septum = 0.0;
    double piriform_height = 0.0;

    std::array<double, kColumnCount> values() const noexcept;
    static SinusMeasurement from_values(const std::array<double, kColumnCount>& v) noexcept;
    bool operator==(const SinusMeasurement&) const = default;
};

// Aggregate row declared in a table footer ("Average", "σ"). A column the
// footer leaves blank is nullopt.
using AggregateRow = std::vector<std::optional<double>>;

template <class M>
struct MeasurementTable {
    std::vector<M> records;
    std::optional<AggregateRow> declared_average;
    std::optional<AggregateRow> declared_sigma;
};

// Parses the semicolon- or comma-separated measurement format. The header
// must match M::kHeader exactly. With ';' as separator, both ',' and '.'
// are accepted as the decimal mark. Blank lines and '#' comments are
// skipped; rows labelled Average/σ are returned as declared aggregates.
// Throws ParseError (with 1-based line and column) or NegativeLength.
template <class M>
MeasurementTable<M> parse_measurements(std::string_view text);

enum class DecimalMark { Point, Comma };

// Inverse of parse_measurements for the records (footers are not written).
// Values use the shortest round-tripping representation.
template <class M>
std::string serialize_measurements(std::span<const M> records, DecimalMark mark = DecimalMark::Point);

enum class SigmaConvention { Population, Sample };

// The published sigma rows follow the sample (n - 1) convention; see
// tests/acceptance for the column-wise check.
inline constexpr SigmaConvention kPublishedSigmaConvention = SigmaConvention::Sample;

struct ColumnStats {
    double mean = 0.0;
    double sigma_population = 0.0;
    double sigma_sample = 0.0;  // 0 when n == 1
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 0;

    double sigma(SigmaConvention c) const noexcept {
        return c == SigmaConvention::Population ? sigma_population : sigma_sample;
    }
};

// Throws EmptyInput for an empty record list.
ColumnStats column_stats(std::span<const double> values);

template <class M>
ColumnStats column_stats(std::span<const M> records, typename M::Column column);

// Aggregates as printed in the publication for the two shipped tables.
// The ear table does not print an age aggregate.
struct PrintedAggregates {
    AggregateRow average;
    AggregateRow sigma;
};

PrintedAggregates published_aggregates(MeasurementKind kind);

enum class Statistic { Mean, Min, Max };
enum class CanalDiameter { Sulcus, Lateral };

// Axis-aligned box, closed.
struct Box {
    Vec3 min;
    Vec3 max;
};

// External canal (cylinder from z = 0 to z = canal_length, radius
// canal_radius) abutting the middle-ear cavity, a box centered on the canal
// axis spanning z in (canal_length, canal_length + cavity_depth].
// cavity_height runs along y, cavity_width along x, cavity_depth (the
// anteroposterior length) along z.
struct EarWorkspace {
    double canal_length = 0.0;
    double canal_radius = 0.0;
    double cavity_height = 0.0;
    double cavity_width = 0.0;
    double cavity_depth = 0.0;

    double total_depth() const noexcept { return canal_length + cavity_depth; }
    Box cavity_box() const noexcept;
};

enum class SeptumMode {
    Intact,  // right nasal cavity only
    Merged,  // septum removed, both cavities
};

// Nasal cavity bounding box. The triangular maxillary recesses are
// represented by the box itself.
struct SinusWorkspace {
    double sagittal_depth = 0.0;    // piriform orifice to posterior wall
    double right_half_width = 0.0;  // septum to right lateral wall
    double left_half_width = 0.0;   // septum to left lateral wall
    double vertical_extent = 0.0;   // floor to roof
    double entrance_height = 0.0;   // piriform orifice height

    // Floor sits at y = -entrance_height / 2; z spans [0, sagittal_depth].
    Box bounds(SeptumMode mode) const noexcept;
};

// Throws EmptyInput for an empty record list.
EarWorkspace ear_workspace_from_stats(std::span<const EarMeasurement> records, Statistic statistic,
                                      CanalDiameter diameter = CanalDiameter::Sulcus);
SinusWorkspace sinus_workspace_from_stats(std::span<const SinusMeasurement> records,
                                          Statistic statistic);

// Lattice phase for a seed: zero for seed 0, otherwise a per-axis offset
// in [0, step) drawn from a 64-bit Mersenne twister.
Vec3 lattice_phase(double step_mm, std::uint64_t seed);

// Grid sampling with spacing step_mm. The lattice is anchored at the box
// minimum (boxes) or on the remote-center axis (anatomical workspaces) and
// shifted by lattice_phase(step_mm, seed). Throws ResolutionTooCoarse when
// an extent is smaller than the step or fewer than 8 points result, and
// DomainError for a non-positive step.
PointCloud sample_targets(const Box& box, double step_mm, std::uint64_t seed = 0);
PointCloud sample_targets(const EarWorkspace& workspace, double step_mm, std::uint64_t seed = 0);
PointCloud sample_targets(const SinusWorkspace& workspace, SeptumMode mode, double step_mm,
                          std::uint64_t seed = 0);

}  // namespace rcm
