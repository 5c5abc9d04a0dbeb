#include "rcm/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rcm/errors.hpp"
#include "rcm/units.hpp"

namespace rcm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double to_double(std::string_view s, const std::string& key) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError(key, "'" + std::string(s) + "' is not a finite number");
    }
    return v;
}

std::vector<double> to_vector(std::string_view s, std::size_t expected, const std::string& key) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(',', start);
        out.push_back(to_double(s.substr(start, pos == std::string_view::npos ? pos : pos - start), key));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (out.size() != expected) {
        throw ConfigError(key, "expected " + std::to_string(expected) + " comma-separated values");
    }
    return out;
}

std::size_t to_count(std::string_view s, const std::string& key) {
    const double v = to_double(s, key);
    if (v < 0.0 || v != std::floor(v)) throw ConfigError(key, "must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

Vec3 to_vec3(std::string_view s, const std::string& key) {
    const auto v = to_vector(s, 3, key);
    return {v[0], v[1], v[2]};
}

}  // namespace

ToolConfig parse_config(std::string_view text) {
    std::map<std::string, std::string, std::less<>> entries;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        if (!entries.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
            throw ConfigError(key, "duplicate key");
        }
    }

    static const std::vector<std::string_view> kKnown = {
        "rcm_point_mm",      "limit_alpha_deg",   "limit_beta_deg",    "insertion_min_mm",
        "insertion_max_mm",  "parallelogram_height_mm", "height_to_dmax_gain", "opt_offset_min_mm",
        "opt_offset_max_mm", "opt_height_min_mm", "opt_height_max_mm", "opt_lattice",
        "opt_method",        "opt_budget",        "opt_penalty_weight"};
    for (const auto& [key, value] : entries) {
        if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) throw ConfigError(key, "unknown key");
    }

    const auto required = [&](const std::string& key) -> const std::string& {
        const auto it = entries.find(key);
        if (it == entries.end()) throw ConfigError(key, "missing required key");
        return it->second;
    };
    const auto optional = [&](const std::string& key) -> const std::string* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    ToolConfig cfg;
    MechanismConfig& m = cfg.mechanism;
    m.rcm_point = to_vec3(required("rcm_point_mm"), "rcm_point_mm");
    m.limit_alpha = deg_to_rad(to_double(required("limit_alpha_deg"), "limit_alpha_deg"));
    m.limit_beta = deg_to_rad(to_double(required("limit_beta_deg"), "limit_beta_deg"));
    m.insertion.min_mm = to_double(required("insertion_min_mm"), "insertion_min_mm");
    m.insertion.max_mm = to_double(required("insertion_max_mm"), "insertion_max_mm");
    m.parallelogram_height = to_double(required("parallelogram_height_mm"), "parallelogram_height_mm");
    if (const auto* v = optional("height_to_dmax_gain")) m.height_to_dmax_gain = to_double(*v, "height_to_dmax_gain");
    m.validate();

    DesignBounds& b = cfg.bounds;
    b.offset_min = {-5.0, -5.0, -5.0};
    b.offset_max = {5.0, 5.0, 5.0};
    b.height_min = b.height_max = m.parallelogram_height;
    if (const auto* v = optional("opt_offset_min_mm")) b.offset_min = to_vec3(*v, "opt_offset_min_mm");
    if (const auto* v = optional("opt_offset_max_mm")) b.offset_max = to_vec3(*v, "opt_offset_max_mm");
    if (const auto* v = optional("opt_height_min_mm")) b.height_min = to_double(*v, "opt_height_min_mm");
    if (const auto* v = optional("opt_height_max_mm")) b.height_max = to_double(*v, "opt_height_max_mm");
    if (const auto* v = optional("opt_lattice")) {
        const auto l = to_vector(*v, 4, "opt_lattice");
        for (std::size_t k = 0; k < 4; ++k) {
            if (l[k] < 1.0 || l[k] != std::floor(l[k])) throw ConfigError("opt_lattice", "entries must be integers >= 1");
            b.lattice[k] = static_cast<std::size_t>(l[k]);
        }
    }
    try {
        b.validate(m);
    } catch (const InfeasibleBounds& e) {
        throw ConfigError("opt_bounds", e.what());
    }
    if (const auto* v = optional("opt_method")) {
        if (*v == "grid") cfg.method = OptimizerMethod::Grid;
        else if (*v == "simplex") cfg.method = OptimizerMethod::Simplex;
        else throw ConfigError("opt_method", "must be 'grid' or 'simplex'");
    }
    if (const auto* v = optional("opt_budget")) {
        cfg.budget = to_count(*v, "opt_budget");
        if (cfg.budget == 0) throw ConfigError("opt_budget", "must be at least 1");
    }
    if (const auto* v = optional("opt_penalty_weight")) cfg.penalty_weight = to_double(*v, "opt_penalty_weight");
    return cfg;
}

ToolConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("--config", "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace rcm
