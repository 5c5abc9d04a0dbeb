#include "rcm/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "rcm/errors.hpp"
#include "rcm/units.hpp"

namespace rcm {

std::string format_number(double v) {
    char buf[64];
    if (v == 0.0) v = 0.0;  // no "-0" in the output
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::vector<MapRow> map_rows(const OrientationMap& map) {
    std::vector<MapRow> rows;
    rows.reserve(map.cells.size());
    for (const OrientationCell& c : map.cells) {
        rows.push_back({rad_to_deg(c.alpha), rad_to_deg(c.beta), c.admissible, c.singularity_margin, c.dexterity});
    }
    return rows;
}

std::string write_map_csv(const OrientationMap& map) {
    std::string out(kMapCsvHeader);
    out += '\n';
    for (const MapRow& r : map_rows(map)) {
        out += format_number(r.alpha_deg) + ',' + format_number(r.beta_deg) + ',' + (r.admissible ? '1' : '0') +
               ',' + format_number(r.singularity_margin_rad) + ',' + format_number(r.dexterity) + '\n';
    }
    return out;
}

std::vector<MapRow> parse_map_csv(std::string_view text) {
    std::vector<MapRow> rows;
    std::size_t line_no = 0, start = 0;
    bool header = false;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header) {
            if (line != kMapCsvHeader) throw ParseError("unexpected map header", line_no, 1);
            header = true;
            continue;
        }
        double v[5];
        std::size_t field = 0, pos = 0;
        while (field < 5) {
            const std::size_t comma = line.find(',', pos);
            const std::string_view s = line.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v[field]);
            if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
                throw ParseError("invalid map value '" + std::string(s) + "'", line_no, field + 1);
            }
            ++field;
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (field != 5 || line.find(',', pos) != std::string_view::npos) {
            throw ParseError("expected 5 fields", line_no, 0);
        }
        rows.push_back({v[0], v[1], v[2] != 0.0, v[3], v[4]});
    }
    if (!header) throw ParseError("missing map header", 1, 0);
    return rows;
}

std::string write_coverage_csv(const PointCloud& targets, const CoverageResult& result) {
    std::string out(kCoverageCsvHeader);
    out += '\n';
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const Vec3 p = targets[i];
        const ReachabilityReport& r = result.points.at(i);
        out += format_number(p.x) + ',' + format_number(p.y) + ',' + format_number(p.z) + ',' +
               (r.reachable ? '1' : '0') + ',' + failure_reason(r.failures) + ',';
        if (r.aim) {
            out += format_number(rad_to_deg(r.aim->angles.alpha())) + ',' +
                   format_number(rad_to_deg(r.aim->angles.beta())) + ',' + format_number(r.aim->depth);
        } else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

std::string write_optimization_csv(const OptimizationReport& report) {
    std::string out(kOptimizationCsvHeader);
    out += '\n';
    for (const HistoryEntry& h : report.history) {
        const DesignVariables& v = h.variables;
        out += std::to_string(h.iteration) + ',' + format_number(v.rcm_offset.x) + ',' +
               format_number(v.rcm_offset.y) + ',' + format_number(v.rcm_offset.z) + ',' +
               format_number(v.parallelogram_height) + ',' + format_number(h.coverage) + ',' +
               format_number(h.objective) + ',' + format_number(h.incumbent_coverage) + ',' +
               format_number(h.incumbent_objective) + '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

}  // namespace rcm
