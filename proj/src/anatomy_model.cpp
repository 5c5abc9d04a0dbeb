#include "rcm/anatomy_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <string>
#include <system_error>

#include "rcm/errors.hpp"

namespace rcm {

std::array<double, EarMeasurement::kColumnCount> EarMeasurement::values() const noexcept {
    return {age, cae_diameter_lateral, cae_diameter_sulcus, cae_length, om_height, om_width, om_ap_length};
}

EarMeasurement EarMeasurement::from_values(const std::array<double, kColumnCount>& v) noexcept {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

std::array<double, SinusMeasurement::kColumnCount> SinusMeasurement::values() const noexcept {
    return {age,        piriform_posterior,  right_lateral_septum, left_lateral_septum,
            floor_roof, right_meatus_septum, left_meatus_septum,   piriform_height};
}

SinusMeasurement SinusMeasurement::from_values(const std::array<double, kColumnCount>& v) noexcept {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_number(std::string_view field, char sep, std::size_t row, std::size_t col) {
    std::string buf(field);
    if (sep != ',') std::replace(buf.begin(), buf.end(), ',', '.');
    const char* first = buf.data();
    const char* last = buf.data() + buf.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (buf.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ParseError("invalid number '" + std::string(field) + "'", row, col);
    }
    return v;
}

bool is_average_label(std::string_view s) {
    return s == "Average" || s == "average" || s == "Mean" || s == "mean";
}

bool is_sigma_label(std::string_view s) {
    return s == "σ" || s == "sigma" || s == "Sigma" || s == "SD" || s == "sd";
}

}  // namespace

template <class M>
MeasurementTable<M> parse_measurements(std::string_view text) {
    constexpr std::size_t kCols = M::kColumnCount;
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    MeasurementTable<M> table;
    char sep = 0;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        const std::string_view line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        if (sep == 0) {
            sep = line.find(';') != std::string_view::npos ? ';' : ',';
            const auto names = split(line, sep);
            for (std::size_t c = 0; c < std::max(names.size(), kCols); ++c) {
                if (c >= names.size() || c >= kCols || names[c] != M::kHeader[c]) {
                    throw ParseError("header does not match the expected columns", line_no, c + 1);
                }
            }
            continue;
        }

        const auto fields = split(line, sep);
        if (is_average_label(fields.front()) || is_sigma_label(fields.front())) {
            const std::size_t nvals = fields.size() - 1;
            if (nvals != kCols && nvals != kCols - 1) {
                throw ParseError("aggregate row has " + std::to_string(nvals) + " values", line_no, 0);
            }
            // A footer one value short omits the age column.
            const std::size_t offset = kCols - nvals;
            AggregateRow row(kCols);
            for (std::size_t v = 0; v < nvals; ++v) {
                if (!fields[v + 1].empty()) row[v + offset] = parse_number(fields[v + 1], sep, line_no, v + 2);
            }
            (is_average_label(fields.front()) ? table.declared_average : table.declared_sigma) = std::move(row);
            continue;
        }

        if (fields.size() != kCols) {
            throw ParseError("expected " + std::to_string(kCols) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no, 0);
        }
        std::array<double, kCols> values{};
        for (std::size_t c = 0; c < kCols; ++c) {
            values[c] = parse_number(fields[c], sep, line_no, c + 1);
            if (c == 0 && values[c] < 0.0) throw ParseError("age must be >= 0", line_no, c + 1);
            if (c > 0 && !(values[c] > 0.0)) {
                throw NegativeLength("non-positive length in " + std::string(M::kHeader[c]) + ": '" +
                                         std::string(fields[c]) + "'",
                                     line_no, c + 1);
            }
        }
        table.records.push_back(M::from_values(values));
    }
    if (sep == 0) throw ParseError("missing header row", 1, 0);
    return table;
}

template <class M>
std::string serialize_measurements(std::span<const M> records, DecimalMark mark) {
    std::string out;
    for (std::size_t c = 0; c < M::kColumnCount; ++c) {
        if (c) out += ';';
        out += M::kHeader[c];
    }
    out += '\n';
    char buf[64];
    for (const M& r : records) {
        const auto values = r.values();
        for (std::size_t c = 0; c < values.size(); ++c) {
            if (c) out += ';';
            const auto res = std::to_chars(buf, buf + sizeof buf, values[c]);
            std::string s(buf, res.ptr);
            if (mark == DecimalMark::Comma) std::replace(s.begin(), s.end(), '.', ',');
            out += s;
        }
        out += '\n';
    }
    return out;
}

ColumnStats column_stats(std::span<const double> values) {
    if (values.empty()) throw EmptyInput("column statistics need at least one record");
    ColumnStats s;
    s.n = values.size();
    double sum = 0.0;
    s.min = s.max = values.front();
    for (double v : values) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sigma_population = std::sqrt(ss / static_cast<double>(s.n));
    s.sigma_sample = s.n > 1 ? std::sqrt(ss / static_cast<double>(s.n - 1)) : 0.0;
    return s;
}

template <class M>
ColumnStats column_stats(std::span<const M> records, typename M::Column column) {
    std::vector<double> col;
    col.reserve(records.size());
    for (const M& r : records) col.push_back(r.values()[static_cast<std::size_t>(column)]);
    return column_stats(std::span<const double>(col));
}

template MeasurementTable<EarMeasurement> parse_measurements<EarMeasurement>(std::string_view);
template MeasurementTable<SinusMeasurement> parse_measurements<SinusMeasurement>(std::string_view);
template std::string serialize_measurements<EarMeasurement>(std::span<const EarMeasurement>, DecimalMark);
template std::string serialize_measurements<SinusMeasurement>(std::span<const SinusMeasurement>, DecimalMark);
template ColumnStats column_stats<EarMeasurement>(std::span<const EarMeasurement>, EarMeasurement::Column);
template ColumnStats column_stats<SinusMeasurement>(std::span<const SinusMeasurement>, SinusMeasurement::Column);

PrintedAggregates published_aggregates(MeasurementKind kind) {
    if (kind == MeasurementKind::Ear) {
        return {{std::nullopt, 5.79, 7.85, 26.75, 17.35, 10.10, 4.10},
                {std::nullopt, 1.15, 1.58, 3.87, 1.68, 1.57, 1.17}};
    }
    return {{56.3, 77.04, 39.22, 39.30, 55.39, 13.26, 14.22, 29.57},
            {22.52, 8.35, 4.51, 4.78, 6.63, 2.26, 2.47, 3.67}};
}

Box EarWorkspace::cavity_box() const noexcept {
    return {{-cavity_width / 2.0, -cavity_height / 2.0, canal_length},
            {cavity_width / 2.0, cavity_height / 2.0, canal_length + cavity_depth}};
}

Box SinusWorkspace::bounds(SeptumMode mode) const noexcept {
    const double floor = -entrance_height / 2.0;
    const double x_min = mode == SeptumMode::Merged ? -left_half_width : 0.0;
    return {{x_min, floor, 0.0}, {right_half_width, floor + vertical_extent, sagittal_depth}};
}

namespace {

template <class M>
double pick(std::span<const M> records, typename M::Column column, Statistic statistic) {
    const ColumnStats s = column_stats(records, column);
    switch (statistic) {
        case Statistic::Mean: return s.mean;
        case Statistic::Min: return s.min;
        case Statistic::Max: return s.max;
    }
    return s.mean;
}

}  // namespace

EarWorkspace ear_workspace_from_stats(std::span<const EarMeasurement> records, Statistic statistic,
                                      CanalDiameter diameter) {
    using C = EarMeasurement::Column;
    EarWorkspace w;
    w.canal_length = pick(records, C::CaeLength, statistic);
    w.canal_radius =
        pick(records, diameter == CanalDiameter::Sulcus ? C::CaeDiameterSulcus : C::CaeDiameterLateral,
             statistic) /
        2.0;
    w.cavity_height = pick(records, C::OmHeight, statistic);
    w.cavity_width = pick(records, C::OmWidth, statistic);
    w.cavity_depth = pick(records, C::OmApLength, statistic);
    return w;
}

SinusWorkspace sinus_workspace_from_stats(std::span<const SinusMeasurement> records, Statistic statistic) {
    using C = SinusMeasurement::Column;
    SinusWorkspace w;
    w.sagittal_depth = pick(records, C::PiriformPosterior, statistic);
    w.right_half_width = pick(records, C::RightLateralSeptum, statistic);
    w.left_half_width = pick(records, C::LeftLateralSeptum, statistic);
    w.vertical_extent = pick(records, C::FloorRoof, statistic);
    w.entrance_height = pick(records, C::PiriformHeight, statistic);
    return w;
}

Vec3 lattice_phase(double step_mm, std::uint64_t seed) {
    if (seed == 0) return {};
    std::mt19937_64 rng(seed);
    const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double px = unit() * step_mm;
    const double py = unit() * step_mm;
    const double pz = unit() * step_mm;
    return {px, py, pz};
}

namespace {

// Integer range of k with lo <= origin + k * step <= hi.
struct IndexRange {
    long first;
    long last;  // inclusive; last < first when empty
};

IndexRange lattice_range(double lo, double hi, double origin, double step) {
    // Relative slack so that extents that are exact multiples of the step
    // keep their end points.
    constexpr double kSlack = 1e-12;
    const double a = (lo - origin) / step;
    const double b = (hi - origin) / step;
    return {static_cast<long>(std::ceil(a - kSlack * std::max(1.0, std::abs(a)))),
            static_cast<long>(std::floor(b + kSlack * std::max(1.0, std::abs(b))))};
}

double lattice_coord(double origin, long k, double step, double lo, double hi) {
    return std::clamp(origin + static_cast<double>(k) * step, lo, hi);
}

void require_step(double step_mm) {
    if (!(std::isfinite(step_mm) && step_mm > 0.0)) throw DomainError("sampling step must be positive");
}

void require_extent(double extent, double step_mm, const char* what) {
    if (!(extent >= step_mm)) {
        throw ResolutionTooCoarse(std::string(what) + " extent " + std::to_string(extent) +
                                  " mm is smaller than the step " + std::to_string(step_mm) + " mm");
    }
}

void require_count(const PointCloud& points) {
    if (points.size() < 8) {
        throw ResolutionTooCoarse("sampling produced " + std::to_string(points.size()) +
                                  " points; at least 8 are required");
    }
}

// Rectangle [x0,x1] x [y0,y1] at height z, lattice anchored at `origin`.
void emit_rectangle(PointCloud& out, double x0, double x1, double y0, double y1, double z,
                    const Vec3& origin, double step) {
    const IndexRange ri = lattice_range(x0, x1, origin.x, step);
    const IndexRange rj = lattice_range(y0, y1, origin.y, step);
    for (long i = ri.first; i <= ri.last; ++i) {
        const double x = lattice_coord(origin.x, i, step, x0, x1);
        for (long j = rj.first; j <= rj.last; ++j) out.push_back({x, lattice_coord(origin.y, j, step, y0, y1), z});
    }
}

// Z lattice values strictly above 0 and at most z_max.
std::vector<double> z_levels(double z_max, double phase, double step) {
    std::vector<double> zs;
    IndexRange rk = lattice_range(0.0, z_max, phase, step);
    for (long k = rk.first; k <= rk.last; ++k) {
        const double z = lattice_coord(phase, k, step, 0.0, z_max);
        if (z > 0.0) zs.push_back(z);
    }
    return zs;
}

}  // namespace

PointCloud sample_targets(const Box& box, double step_mm, std::uint64_t seed) {
    require_step(step_mm);
    require_extent(box.max.x - box.min.x, step_mm, "box x");
    require_extent(box.max.y - box.min.y, step_mm, "box y");
    require_extent(box.max.z - box.min.z, step_mm, "box z");
    const Vec3 origin = box.min + lattice_phase(step_mm, seed);
    PointCloud out;
    const IndexRange rk = lattice_range(box.min.z, box.max.z, origin.z, step_mm);
    for (long k = rk.first; k <= rk.last; ++k) {
        const double z = lattice_coord(origin.z, k, step_mm, box.min.z, box.max.z);
        emit_rectangle(out, box.min.x, box.max.x, box.min.y, box.max.y, z, origin, step_mm);
    }
    require_count(out);
    return out;
}

PointCloud sample_targets(const EarWorkspace& w, double step_mm, std::uint64_t seed) {
    require_step(step_mm);
    require_extent(w.canal_length, step_mm, "canal length");
    require_extent(2.0 * w.canal_radius, step_mm, "canal diameter");
    require_extent(w.cavity_height, step_mm, "cavity height");
    require_extent(w.cavity_width, step_mm, "cavity width");
    require_extent(w.cavity_depth, step_mm, "cavity depth");

    const Vec3 origin = lattice_phase(step_mm, seed);
    const Box cavity = w.cavity_box();
    PointCloud out;
    for (double z : z_levels(w.total_depth(), origin.z, step_mm)) {
        if (z <= w.canal_length) {
            // Disk cross-section, enumerated chord by chord.
            const double r = w.canal_radius;
            const IndexRange ri = lattice_range(-r, r, origin.x, step_mm);
            for (long i = ri.first; i <= ri.last; ++i) {
                const double x = lattice_coord(origin.x, i, step_mm, -r, r);
                const double c = std::sqrt(std::max(0.0, r * r - x * x));
                const IndexRange rj = lattice_range(-c, c, origin.y, step_mm);
                for (long j = rj.first; j <= rj.last; ++j) {
                    out.push_back({x, lattice_coord(origin.y, j, step_mm, -c, c), z});
                }
            }
        } else {
            emit_rectangle(out, cavity.min.x, cavity.max.x, cavity.min.y, cavity.max.y, z, origin, step_mm);
        }
    }
    require_count(out);
    return out;
}

PointCloud sample_targets(const SinusWorkspace& w, SeptumMode mode, double step_mm, std::uint64_t seed) {
    require_step(step_mm);
    const Box b = w.bounds(mode);
    require_extent(b.max.x - b.min.x, step_mm, "cavity width");
    require_extent(b.max.y - b.min.y, step_mm, "floor to roof");
    require_extent(b.max.z - b.min.z, step_mm, "sagittal depth");

    const Vec3 origin = lattice_phase(step_mm, seed);
    PointCloud out;
    for (double z : z_levels(b.max.z, origin.z, step_mm)) {
        emit_rectangle(out, b.min.x, b.max.x, b.min.y, b.max.y, z, origin, step_mm);
    }
    require_count(out);
    return out;
}

}  // namespace rcm
