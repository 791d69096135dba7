#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mafrac/config.hpp"
#include "mafrac/report.hpp"

using namespace mafrac;
using doctest::Approx;

namespace {

ExperimentConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string parse_error(const std::string& text) {
    try {
        parse_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("config: full round trip with comments and whitespace") {
    ExperimentConfig cfg = parse_text(R"(# experiment
[potential]
kind = perturbed_quad
dim  =  2
c = 0.25     # perturbation strength

[section]
x0 = 0.1, -0.2
R = 0.75
resolution = 64

[fractional]
s = 0.3, 0.5, 0.7
route = semigroup

[run]
suites = constants, bessel
out = results
seed = 42
)");
    CHECK(cfg.kind == "perturbed_quad");
    CHECK(cfg.dim == 2);
    CHECK(cfg.c == Approx(0.25));
    REQUIRE(cfg.x0.size() == 2);
    CHECK(cfg.x0(0) == Approx(0.1));
    CHECK(cfg.x0(1) == Approx(-0.2));
    CHECK(cfg.R == Approx(0.75));
    CHECK(cfg.resolution == 64);
    REQUIRE(cfg.s_values.size() == 3);
    CHECK(cfg.s_values[1] == Approx(0.5));
    CHECK(cfg.route == "semigroup");
    REQUIRE(cfg.suites.size() == 2);
    CHECK(cfg.suites[0] == "constants");
    CHECK(cfg.suites[1] == "bessel");
    CHECK(cfg.out_dir == "results");
    CHECK(cfg.seed == 42);

    Potential p = cfg.make_potential();
    CHECK(p.dim == 2);
    CHECK(p.value(pt(1.0, 0.0)) == Approx(0.5 + 0.25));
}

TEST_CASE("config: empty input yields the documented defaults") {
    ExperimentConfig cfg = parse_text("");
    CHECK(cfg.kind == "quad");
    CHECK(cfg.dim == 1);
    CHECK(cfg.c == Approx(1.0));
    REQUIRE(cfg.x0.size() == 1);
    CHECK(cfg.x0(0) == 0.0);
    CHECK(cfg.R == Approx(0.5));
    CHECK(cfg.resolution == 300);
    REQUIRE(cfg.s_values.size() == 1);
    CHECK(cfg.s_values[0] == Approx(0.5));
    CHECK(cfg.route == "spectral");
    CHECK(cfg.suites.empty());
    CHECK(cfg.out_dir == "out");
    CHECK(cfg.seed == 1);

    Potential p = cfg.make_potential();
    CHECK(p.value(pt(0.5)) == Approx(0.25));
}

TEST_CASE("config: x0 defaults to the origin of the configured dimension") {
    ExperimentConfig cfg = parse_text("[potential]\nkind = quad\ndim = 2\n");
    REQUIRE(cfg.x0.size() == 2);
    CHECK(cfg.x0.norm() == 0.0);
}

TEST_CASE("config: malformed structure is rejected with a line reference") {
    CHECK(parse_error("[potential\nkind = quad\n").find("unterminated section header") !=
          std::string::npos);
    CHECK(parse_error("[orbit]\n").find("unknown section 'orbit'") != std::string::npos);
    CHECK(parse_error("[potential]\nkind quad\n").find("expected key = value") !=
          std::string::npos);
    CHECK(parse_error("[potential]\n= quad\n").find("empty key") != std::string::npos);
    CHECK(parse_error("[potential]\nbogus = 1\n").find("unknown key 'potential.bogus'") !=
          std::string::npos);
    CHECK(parse_error("[run]\n\n\nbogus = 1\n").find("line 4") != std::string::npos);
}

TEST_CASE("config: numeric fields must parse completely") {
    CHECK(parse_error("[section]\nR = fast\n").find("expects a number") != std::string::npos);
    CHECK(parse_error("[section]\nR = 0.5x\n").find("expects a number") != std::string::npos);
    CHECK(parse_error("[section]\nresolution = 4.5\n").find("expects an integer") !=
          std::string::npos);
    CHECK(parse_error("[run]\nseed = -3\n").find("nonnegative") != std::string::npos);
}

TEST_CASE("config: constraint violations name the key and the rule") {
    CHECK(parse_error("[potential]\nkind = cubic\n").find("potential.kind") != std::string::npos);
    CHECK(parse_error("[potential]\ndim = 3\n").find("must be 1 or 2") != std::string::npos);
    CHECK(parse_error("[potential]\nkind = power1d\ndim = 2\nc = 3\n").find("requires dim = 1") !=
          std::string::npos);
    CHECK(parse_error("[potential]\nkind = quad\nc = 0\n").find("must be positive") !=
          std::string::npos);
    CHECK(parse_error("[potential]\nkind = power1d\nc = 2.0\n").find("exceed 2") !=
          std::string::npos);
    CHECK(parse_error("[potential]\ndim = 2\n[section]\nx0 = 0.1\n")
              .find("exactly dim coordinates") != std::string::npos);
    CHECK(parse_error("[section]\nR = -1\n").find("section.R") != std::string::npos);
    CHECK(parse_error("[section]\nresolution = 4\n").find("at least 8") != std::string::npos);
    CHECK(parse_error("[fractional]\nroute = exact\n").find("fractional.route") !=
          std::string::npos);
    CHECK(parse_error("[run]\nout =\n").find("run.out") != std::string::npos);
}

TEST_CASE("config: fractional orders outside (0,1) are rejected") {
    for (const char* bad : {"1.5", "0", "1", "-0.2"}) {
        std::string msg = parse_error(std::string("[fractional]\ns = ") + bad + "\n");
        CHECK(msg.find("(0,1)") != std::string::npos);
    }
    ExperimentConfig ok = parse_text("[fractional]\ns = 0.01, 0.99\n");
    CHECK(ok.s_values.size() == 2);
}

TEST_CASE("config: power1d preset is instantiated with the configured power") {
    ExperimentConfig cfg = parse_text("[potential]\nkind = power1d\nc = 4\n");
    Potential p = cfg.make_potential();
    CHECK(p.dim == 1);
    CHECK(p.value(pt(2.0)) == Approx(std::pow(2.0, 4.0) / 4.0));
    CHECK(p.hessian(pt(1.5))(0, 0) == Approx(3.0 * std::pow(1.5, 2.0)));
}

TEST_CASE("config: file variant reports unreadable paths") {
    CHECK_THROWS_AS(parse_config_file("/nonexistent/path.cfg"), ConfigError);
    try {
        parse_config_file("/nonexistent/path.cfg");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("cannot read config file") != std::string::npos);
    }

    std::string path = (std::filesystem::temp_directory_path() / "mafrac_cfg_test.cfg").string();
    std::ofstream(path) << "[section]\nR = 0.25\n";
    ExperimentConfig cfg = parse_config_file(path);
    CHECK(cfg.R == Approx(0.25));
    std::filesystem::remove(path);
}

TEST_CASE("report: csv numbers survive a text round trip bit for bit") {
    for (double x : {M_PI, 1.0 / 3.0, 1e-300, -2.5e17, 0.1 + 0.2}) {
        std::string text = csv_num(x);
        CHECK(std::stod(text) == x);
    }
    CHECK(csv_num(1.0) == "1");
}

TEST_CASE("report: csv writer enforces the header width") {
    auto dir = std::filesystem::temp_directory_path() / "mafrac_report_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "table.csv").string();
    {
        CsvWriter csv(path, {"a", "b"});
        csv.row({1.0, 0.5});
        csv.row(std::vector<std::string>{"x", "y"});
        CHECK_THROWS_AS(csv.row(std::vector<double>{1.0}), std::logic_error);
        CHECK_THROWS_AS(csv.row(std::vector<std::string>{"1", "2", "3"}), std::logic_error);
    }
    std::string text = slurp(path);
    CHECK(text == "a,b\n1,0.5\nx,y\n");

    CHECK_THROWS_AS(CsvWriter(path, {}), std::logic_error);
    CHECK_THROWS_AS(CsvWriter((dir / "missing/deep.csv").string(), {"a"}), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("report: svg plot writes a self contained picture") {
    auto dir = std::filesystem::temp_directory_path() / "mafrac_svg_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "plot.svg").string();

    SvgSeries a;
    a.x = {0.0, 0.5, 1.0};
    a.y = {1.0, 0.25, 0.0};
    a.label = "decay";
    SvgSeries b = a;
    b.y = {0.0, 0.5, 1.0};
    b.color = "#d62728";
    b.label = "growth";
    write_svg_plot(path, "crossing <profiles>", {a, b}, {0.5});

    std::string text = slurp(path);
    CHECK(text.find("<svg xmlns") != std::string::npos);
    CHECK(text.find("polyline") != std::string::npos);
    CHECK(text.find("stroke-dasharray") != std::string::npos);
    CHECK(text.find("crossing &lt;profiles&gt;") != std::string::npos);
    CHECK(text.find("decay") != std::string::npos);
    CHECK(text.find("</svg>") != std::string::npos);

    SvgSeries broken;
    broken.x = {0.0, 1.0};
    broken.y = {0.0};
    CHECK_THROWS_AS(write_svg_plot(path, "bad", {broken}, {}), std::logic_error);
    std::filesystem::remove_all(dir);
}
