#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result rcmtool(const std::string& args) {
    const std::string cmd = std::string(RCMTOOL_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) r.out += buf;
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const char* name) { return std::string(RCM_DATA_DIR) + "/" + name; }
std::string config(const char* name) { return std::string(RCM_CONFIG_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::size_t lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("ik and fk") {
    Result r = rcmtool("ik --alpha 30 --beta 0");
    CHECK(r.status == 0);
    CHECK(r.out == "theta1=30.000000 theta2=0.000000\n");
    r = rcmtool("fk --theta1 45 --theta2 30");
    CHECK(r.status == 0);
    CHECK(r.out == "alpha=45.000000 beta=22.207654\n");
    CHECK(rcmtool("fk --theta1 90 --theta2 0").status == 2);
    CHECK(rcmtool("ik --alpha 90 --beta 0").status == 2);
}

TEST_CASE("usage errors") {
    CHECK(rcmtool("").status == 64);
    CHECK(rcmtool("ik --alpha 30").status == 64);
    CHECK(rcmtool("frobnicate").status == 64);
    CHECK(rcmtool("ik --alpha thirty --beta 0").status == 64);
    CHECK(rcmtool("coverage --config " + config("ear.cfg") + " --anatomy " + data("table1_ear.csv") +
                  " --step 500 --output cli_cov_coarse.csv")
              .status == 64);
}

TEST_CASE("stats") {
    Result r = rcmtool("stats --input " + data("table2_sinus.csv") + " --kind sinus --compare-printed --output cli_stats.csv");
    CHECK(r.status == 0);
    CHECK(r.out.find("77.04") != std::string::npos);
    const std::string csv = slurp("cli_stats.csv");
    CHECK(csv.rfind("column,n,mean,sigma_population,sigma_sample,min,max,printed_mean", 0) == 0);
    CHECK(lines(csv) == 9);

    write("cli_empty.csv", "");
    CHECK(rcmtool("stats --input cli_empty.csv --kind ear").status == 65);
    write("cli_header_only.csv", "Age;Canal length\n");
    CHECK(rcmtool("stats --input cli_header_only.csv --kind ear").status == 65);
    CHECK(rcmtool("stats --input does_not_exist.csv --kind ear").status == 65);
}

TEST_CASE("map") {
    const Result r = rcmtool("map --config " + config("ear.cfg") + " --grid 3 --output cli_map.csv");
    CHECK(r.status == 0);
    const std::string csv = slurp("cli_map.csv");
    CHECK(csv.rfind("alpha_deg,beta_deg,admissible,singularity_margin_rad,dexterity\n", 0) == 0);
    CHECK(lines(csv) == 10);
    CHECK(rcmtool("map --config " + config("ear.cfg") + " --grid 1 --output cli_map1.csv").status == 2);
}

TEST_CASE("coverage") {
    const std::string tight = "cli_tight.cfg";
    write(tight,
          "rcm_point_mm = 0, 0, 0\nlimit_alpha_deg = 0.0001\nlimit_beta_deg = 0.0001\n"
          "insertion_min_mm = 0\ninsertion_max_mm = 45\nparallelogram_height_mm = 60\n");
    Result r = rcmtool("coverage --config " + tight + " --anatomy " + data("table1_ear.csv") +
                       " --kind ear --output cli_cov_tight.csv");
    CHECK(r.status == 0);
    CHECK(r.out.find("coverage=0.01") != std::string::npos);
    CHECK(r.out.find("total=2148") != std::string::npos);

    r = rcmtool("coverage --config " + config("sinus.cfg") + " --anatomy " + data("table2_sinus.csv") +
                " --kind sinus --septum intact --step 3 --seed 4 --output cli_cov_sinus.csv");
    CHECK(r.status == 0);
    const std::string csv = slurp("cli_cov_sinus.csv");
    CHECK(csv.rfind("x_mm,y_mm,z_mm,reachable,fail_reason,alpha_deg,beta_deg,depth_mm\n", 0) == 0);
}

TEST_CASE("span") {
    const Result r = rcmtool("span --config " + config("ear.cfg") + " --anatomy " + data("table1_ear.csv"));
    CHECK(r.status == 0);
    CHECK(r.out.find("apex_deg=") != std::string::npos);
}

TEST_CASE("optimize") {
    const std::string cfg = "cli_opt.cfg";
    write(cfg,
          "rcm_point_mm = 0, 0, 0\nlimit_alpha_deg = 20\nlimit_beta_deg = 20\n"
          "insertion_min_mm = 0\ninsertion_max_mm = 45\nparallelogram_height_mm = 60\n"
          "opt_lattice = 3, 3, 3, 1\n");
    const Result r = rcmtool("optimize --config " + cfg + " --anatomy " + data("table1_ear.csv") +
                             " --method grid --budget 27 --shift 5,0,0 --output cli_opt.csv");
    CHECK(r.status == 0);
    CHECK(r.out.find("evaluations=27") != std::string::npos);
    CHECK(r.out.find("best_offset_mm=5.000000,") != std::string::npos);
    CHECK(lines(slurp("cli_opt.csv")) == 28);
}

TEST_CASE("configuration errors") {
    write("cli_bad.cfg", "rcm_point_mm = 0, 0, 0\ncolour = red\n");
    CHECK(rcmtool("map --config cli_bad.cfg --grid 3 --output cli_bad_map.csv").status == 78);
    CHECK(rcmtool("map --config missing.cfg --grid 3 --output cli_bad_map.csv").status == 78);
    CHECK_FALSE(std::filesystem::exists("cli_bad_map.csv"));
}
