// rcmtool: kinematics queries, measurement statistics, orientation maps,
// coverage and design optimization for the RCM endoscope holder.
//
// Exit codes: 0 ok, 2 kinematic domain error, 64 usage, 65 bad data,
// 78 bad configuration.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rcm/anatomy_model.hpp"
#include "rcm/config_file.hpp"
#include "rcm/design_optimizer.hpp"
#include "rcm/errors.hpp"
#include "rcm/report_io.hpp"
#include "rcm/simd/kernels.hpp"
#include "rcm/units.hpp"
#include "rcm/wrist_kinematics.hpp"
#include "rcm/workspace_analysis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitConfig = 78;

// Printed values are rounded to 6 decimals; avoid "-0.000000".
std::string fixed6(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rcm::ParseError("cannot read " + path, 0, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct AnatomyOptions {
    std::string path;
    std::string kind = "ear";
    std::string statistic = "mean";
    std::string septum = "merged";
    std::string canal_diameter = "sulcus";
    double step = 1.0;
    std::uint64_t seed = 0;
    std::vector<double> shift;
};

void add_anatomy_flags(CLI::App* cmd, AnatomyOptions& a) {
    cmd->add_option("--anatomy", a.path, "Measurement CSV (ear or sinus table)")->required();
    cmd->add_option("--kind", a.kind, "Measurement kind")->check(CLI::IsMember({"ear", "sinus"}));
    cmd->add_option("--statistic", a.statistic, "Workspace dimensions from this statistic")
        ->check(CLI::IsMember({"mean", "min", "max"}));
    cmd->add_option("--septum", a.septum, "Sinus model: intact (right cavity) or merged")
        ->check(CLI::IsMember({"intact", "merged"}));
    cmd->add_option("--canal-diameter", a.canal_diameter, "Ear canal radius source")
        ->check(CLI::IsMember({"sulcus", "lateral"}));
    cmd->add_option("--step", a.step, "Sampling lattice step in mm");
    cmd->add_option("--seed", a.seed, "Lattice phase seed (0 = unshifted)");
    cmd->add_option("--shift", a.shift, "Translate the targets by x,y,z mm")->expected(3)->delimiter(',');
}

rcm::Statistic to_statistic(const std::string& s) {
    if (s == "min") return rcm::Statistic::Min;
    if (s == "max") return rcm::Statistic::Max;
    return rcm::Statistic::Mean;
}

rcm::PointCloud load_targets(const AnatomyOptions& a) {
    const std::string text = read_file(a.path);
    rcm::PointCloud targets;
    if (a.kind == "ear") {
        const auto table = rcm::parse_measurements<rcm::EarMeasurement>(text);
        const auto ws = rcm::ear_workspace_from_stats(
            table.records, to_statistic(a.statistic),
            a.canal_diameter == "lateral" ? rcm::CanalDiameter::Lateral : rcm::CanalDiameter::Sulcus);
        targets = rcm::sample_targets(ws, a.step, a.seed);
    } else {
        const auto table = rcm::parse_measurements<rcm::SinusMeasurement>(text);
        const auto ws = rcm::sinus_workspace_from_stats(table.records, to_statistic(a.statistic));
        targets = rcm::sample_targets(ws, a.septum == "intact" ? rcm::SeptumMode::Intact : rcm::SeptumMode::Merged,
                                      a.step, a.seed);
    }
    if (a.shift.size() == 3) targets = rcm::translated(targets, {a.shift[0], a.shift[1], a.shift[2]});
    return targets;
}

template <class M>
int print_stats(const std::string& text, bool compare_printed, const std::string& output) {
    const auto table = rcm::parse_measurements<M>(text);
    if (table.records.empty()) throw rcm::EmptyInput("no data rows");
    const rcm::PrintedAggregates embedded = rcm::published_aggregates(M::kKind);
    const rcm::AggregateRow& printed_mean = table.declared_average ? *table.declared_average : embedded.average;
    const rcm::AggregateRow& printed_sigma = table.declared_sigma ? *table.declared_sigma : embedded.sigma;

    std::string csv = "column,n,mean,sigma_population,sigma_sample,min,max";
    if (compare_printed) csv += ",printed_mean,mean_diff,printed_sigma,sigma_diff";
    csv += '\n';
    std::printf("%-26s %4s %10s %10s %10s %8s %8s", "column", "n", "mean", "sd_pop", "sd_sample", "min", "max");
    if (compare_printed) std::printf(" %10s %10s %10s %10s", "printed", "diff", "printed_sd", "sd_diff");
    std::printf("\n");

    for (std::size_t c = 0; c < M::kColumnCount; ++c) {
        const auto s = rcm::column_stats<M>(table.records, static_cast<typename M::Column>(c));
        const std::string name(M::kHeader[c]);
        std::printf("%-26s %4zu %10.4f %10.4f %10.4f %8.2f %8.2f", name.c_str(), s.n, s.mean, s.sigma_population,
                    s.sigma_sample, s.min, s.max);
        csv += name + ',' + std::to_string(s.n) + ',' + rcm::format_number(s.mean) + ',' +
               rcm::format_number(s.sigma_population) + ',' + rcm::format_number(s.sigma_sample) + ',' +
               rcm::format_number(s.min) + ',' + rcm::format_number(s.max);
        if (compare_printed) {
            const auto pm = printed_mean[c];
            const auto ps = printed_sigma[c];
            const auto show = [](const std::optional<double>& v, double diff) {
                if (!v) return std::string("         -          -");
                char buf[64];
                std::snprintf(buf, sizeof buf, "%10.2f %+10.4f", *v, diff);
                return std::string(buf);
            };
            const double dm = pm ? s.mean - *pm : 0.0;
            const double ds = ps ? s.sigma(rcm::kPublishedSigmaConvention) - *ps : 0.0;
            std::printf(" %s %s", show(pm, dm).c_str(), show(ps, ds).c_str());
            csv += ',' + (pm ? rcm::format_number(*pm) : "") + ',' + (pm ? rcm::format_number(dm) : "") + ',' +
                   (ps ? rcm::format_number(*ps) : "") + ',' + (ps ? rcm::format_number(ds) : "");
        }
        std::printf("\n");
        csv += '\n';
    }
    if (!output.empty()) rcm::write_file_atomic(output, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kinematics and workspace analysis for a spherical-wrist RCM endoscope holder"};
    app.require_subcommand(1);

    double alpha = 0, beta = 0, theta1 = 0, theta2 = 0;
    auto* ik = app.add_subcommand("ik", "Joint angles for an orientation (degrees)");
    ik->add_option("--alpha", alpha, "Tilt about x, degrees")->required();
    ik->add_option("--beta", beta, "Tilt about y, degrees")->required();

    auto* fk = app.add_subcommand("fk", "Orientation for joint angles (degrees)");
    fk->add_option("--theta1", theta1, "First base joint, degrees")->required();
    fk->add_option("--theta2", theta2, "Second base joint, degrees")->required();

    std::string input, kind = "ear", output;
    bool compare_printed = false;
    auto* stats = app.add_subcommand("stats", "Per-column statistics of a measurement table");
    stats->add_option("--input", input, "Measurement CSV")->required();
    stats->add_option("--kind", kind, "Measurement kind")->required()->check(CLI::IsMember({"ear", "sinus"}));
    stats->add_flag("--compare-printed", compare_printed, "Diff against the published aggregate rows");
    stats->add_option("--output", output, "Also write the statistics as CSV");

    std::string config_path;
    std::size_t grid = 0, grid_beta = 0;
    auto* map = app.add_subcommand("map", "Orientation map over the joint-limit box");
    map->add_option("--config", config_path, "Configuration file")->required();
    map->add_option("--grid", grid, "Cells per axis")->required();
    map->add_option("--grid-beta", grid_beta, "Cells along beta (defaults to --grid)");
    map->add_option("--output", output, "Map CSV")->required();

    AnatomyOptions anatomy;
    auto* cov = app.add_subcommand("coverage", "Fraction of anatomical targets the mechanism reaches");
    cov->add_option("--config", config_path, "Configuration file")->required();
    add_anatomy_flags(cov, anatomy);
    cov->add_option("--output", output, "Per-point coverage CSV")->required();

    auto* span = app.add_subcommand("span", "Angular span needed to aim at every target");
    span->add_option("--config", config_path, "Configuration file (for the remote center)")->required();
    add_anatomy_flags(span, anatomy);

    std::string method;
    std::size_t budget = 0;
    unsigned threads = 0;
    auto* opt = app.add_subcommand("optimize", "Optimize remote-center offset and parallelogram height");
    opt->add_option("--config", config_path, "Configuration file")->required();
    add_anatomy_flags(opt, anatomy);
    opt->add_option("--method", method, "Overrides opt_method")->check(CLI::IsMember({"grid", "simplex"}));
    opt->add_option("--budget", budget, "Overrides opt_budget")->check(CLI::PositiveNumber);
    opt->add_option("--threads", threads, "Grid evaluation workers (0 = all cores)");
    opt->add_option("--output", output, "Optimization history CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*ik) {
            const auto j = rcm::inverse_kinematics(rcm::OrientationAngles::from_degrees(alpha, beta));
            std::printf("theta1=%s theta2=%s\n", fixed6(rcm::rad_to_deg(j.theta1())).c_str(),
                        fixed6(rcm::rad_to_deg(j.theta2())).c_str());
        } else if (*fk) {
            const auto o = rcm::forward_kinematics(rcm::JointAngles::from_degrees(theta1, theta2));
            std::printf("alpha=%s beta=%s\n", fixed6(rcm::rad_to_deg(o.alpha())).c_str(),
                        fixed6(rcm::rad_to_deg(o.beta())).c_str());
        } else if (*stats) {
            const std::string text = read_file(input);
            return kind == "ear" ? print_stats<rcm::EarMeasurement>(text, compare_printed, output)
                                 : print_stats<rcm::SinusMeasurement>(text, compare_printed, output);
        } else if (*map) {
            const rcm::ToolConfig cfg = rcm::load_config(config_path);
            const auto m = rcm::orientation_map(cfg.mechanism, grid, grid_beta ? grid_beta : grid);
            rcm::write_file_atomic(output, rcm::write_map_csv(m));
            std::size_t admissible = 0;
            double min_margin = rcm::kPi, max_dex = 0.0;
            for (const auto& c : m.cells) {
                admissible += c.admissible ? 1 : 0;
                min_margin = std::min(min_margin, c.singularity_margin);
                max_dex = std::max(max_dex, c.dexterity);
            }
            std::printf("cells=%zu admissible=%zu min_singularity_margin_rad=%s max_dexterity=%s\n",
                        m.cells.size(), admissible, fixed6(min_margin).c_str(), fixed6(max_dex).c_str());
        } else if (*cov) {
            const rcm::ToolConfig cfg = rcm::load_config(config_path);
            const rcm::PointCloud targets = load_targets(anatomy);
            const rcm::CoverageResult res = rcm::coverage(cfg.mechanism, targets);
            rcm::write_file_atomic(output, rcm::write_coverage_csv(targets, res));
            std::printf("coverage=%s reachable=%zu total=%zu\n", fixed6(res.fraction).c_str(), res.reachable,
                        res.total);
        } else if (*span) {
            const rcm::ToolConfig cfg = rcm::load_config(config_path);
            const rcm::PointCloud targets = load_targets(anatomy);
            const rcm::SpanReport s = rcm::required_span(targets, cfg.mechanism.rcm_point);
            std::printf("samples=%zu max_abs_alpha_deg=%s max_abs_beta_deg=%s max_off_axis_deg=%s apex_deg=%s%s\n",
                        s.samples, fixed6(rcm::rad_to_deg(s.max_abs_alpha)).c_str(),
                        fixed6(rcm::rad_to_deg(s.max_abs_beta)).c_str(),
                        fixed6(rcm::rad_to_deg(s.max_off_axis)).c_str(), fixed6(rcm::rad_to_deg(s.apex)).c_str(),
                        s.apex_exact ? "" : " (approximate)");
        } else if (*opt) {
            const rcm::ToolConfig cfg = rcm::load_config(config_path);
            const rcm::PointCloud targets = load_targets(anatomy);
            rcm::OptimizerOptions o;
            o.method = cfg.method;
            if (method == "grid") o.method = rcm::OptimizerMethod::Grid;
            if (method == "simplex") o.method = rcm::OptimizerMethod::Simplex;
            o.budget = budget ? budget : cfg.budget;
            o.penalty_weight = cfg.penalty_weight;
            o.threads = threads;
            const rcm::OptimizationReport r = rcm::optimize(cfg.mechanism, targets, cfg.bounds, o);
            rcm::write_file_atomic(output, rcm::write_optimization_csv(r));
            std::printf(
                "best_offset_mm=%s,%s,%s parallelogram_height_mm=%s coverage=%s baseline_coverage=%s "
                "evaluations=%zu budget_exhausted=%d\n",
                fixed6(r.best.rcm_offset.x).c_str(), fixed6(r.best.rcm_offset.y).c_str(),
                fixed6(r.best.rcm_offset.z).c_str(), fixed6(r.best.parallelogram_height).c_str(),
                fixed6(r.best_coverage).c_str(), fixed6(r.baseline_coverage).c_str(), r.evaluations,
                r.budget_exhausted ? 1 : 0);
        }
    } catch (const rcm::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const rcm::InfeasibleBounds& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const rcm::ResolutionTooCoarse& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const rcm::ParseError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const rcm::EmptyInput& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const rcm::DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitDomain;
    } catch (const rcm::DegenerateTarget& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitDomain;
    } catch (const rcm::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}
