#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "vortex/checks.hpp"
#include "vortex/config.hpp"
#include "vortex/errors.hpp"
#include "vortex/output.hpp"
#include "vortex/pipeline.hpp"
#include "vortex/svg.hpp"

using namespace vortex;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("vortex_unit_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("config: key=value with sections") {
    const RunConfig c = parse_config(
        "# comment\n"
        "[solver]\n"
        "n = 5\n"
        "epsilon = 0.1, 0.05\n"
        "[holder]\n"
        "alpha = 0.25\n"
        "[output]\n"
        "dir = out dir\n");
    CHECK(c.n == 5);
    CHECK(c.epsilons == std::vector<double>{0.1, 0.05});
    CHECK(c.alpha == 0.25);
    CHECK(c.output_dir == "out dir");
}

TEST_CASE("config: JSON nested and dotted") {
    const RunConfig a = parse_config(R"({"solver": {"n": 6, "epsilon": [0.1, 0.02]}, "tolerances": {"root": 1e-12}})");
    CHECK(a.n == 6);
    CHECK(a.epsilons == std::vector<double>{0.1, 0.02});
    CHECK(a.root_tol == 1e-12);
    const RunConfig b = parse_config(R"({"solver.n": 6, "solver.epsilon": "0.1,0.02", "tolerances.root": 1e-12})");
    CHECK(a == b);
}

TEST_CASE("config: unknown keys and bad values are rejected") {
    CHECK_THROWS_AS(parse_config("[solver]\nwavenumber = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"solver": {"nn": 4}})"), ConfigError);
    CHECK_THROWS_AS(parse_config("[solver]\nn = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[solver]\nn = four\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[solver]\nepsilon = 0.3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[holder]\nalpha = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[solver\nn = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("n 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/vortex.cfg"), ConfigError);
}

TEST_CASE("config: eps = 0 is accepted so the solver can report it") {
    CHECK(parse_config("[solver]\nepsilon = 0\n").epsilons == std::vector<double>{0.0});
}

TEST_CASE("config round-trips through its canonical form") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> ue(1e-4, 0.15), ua(0.01, 0.99), ut(1e-14, 1e-4);
    for (int i = 0; i < 50; ++i) {
        RunConfig c;
        c.n = 2 + i % 7;
        c.epsilons = {ue(gen), ue(gen), 0.0};
        c.alpha = ua(gen);
        c.quad_rel_tol = ut(gen);
        c.ode_rel_tol = ut(gen);
        c.root_tol = ut(gen);
        c.samples = 16 + i;
        c.jobs = 1 + i % 3;
        c.seed = 1000 + i;
        c.output_dir = "run_" + std::to_string(i);
        CHECK(parse_config(serialize_config(c)) == c);
    }
}

TEST_CASE("config hash ignores output location and worker count") {
    RunConfig a, b;
    b.output_dir = "elsewhere";
    b.jobs = 8;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.n = 5;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("CSV numbers round-trip with 17 significant digits") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(gen) * std::pow(10.0, static_cast<int>(i % 40) - 20);
        CHECK(std::stod(csv_number(v)) == v);
    }
    const Dataset d{"demo", {"x", "y"}, {{1.0, 0.1}}, {{"epsilon", 0.1}}};
    const std::string csv = dataset_to_csv(d, "0123456789abcdef");
    CHECK(csv.find("# config_hash=0123456789abcdef") != std::string::npos);
    CHECK(csv.find("x,y\n1,0.10000000000000001\n") != std::string::npos);
}

TEST_CASE("SVG output is deterministic and self-contained") {
    LinePlot p;
    p.title = "t <1>";
    p.xlabel = "r";
    p.ylabel = "y";
    p.curves = {{"a", "#000", {0.0, 1.0, 2.0}, {1.0, 0.5, 0.2}}};
    p.band = std::make_pair(0.3, 0.4);
    p.note = "config_hash=abc";
    const std::string s1 = render_line_plot(p), s2 = render_line_plot(p);
    CHECK(s1 == s2);
    CHECK(s1.rfind("<svg", 0) == 0);
    CHECK(s1.find("</svg>") != std::string::npos);
    CHECK(s1.find("t &lt;1&gt;") != std::string::npos);
    CHECK(s1.find("config_hash=abc") != std::string::npos);
    CHECK(s1.find("href") == std::string::npos);
    const std::string h = render_heatmap("h", "r", "theta", {{0, 0, 1}, {1, 0, -1}, {0, 1, 0}, {1, 1, 0.5}}, "");
    CHECK(h.find("#ff0000") != std::string::npos);
    CHECK(h.find("#0000ff") != std::string::npos);
}

TEST_CASE("check suite passes, and a flipped kernel branch is caught") {
    const auto ok = run_checks();
    for (const auto& c : ok) CHECK_MESSAGE(c.passed, c.name << ": " << c.achieved);
    CHECK(checks_to_json(ok)["passed"] == true);

    CheckOptions faulty;
    faulty.kernel = [](int n, double r) { return 0.5 * std::pow(r, n - 1); };  // r > 1 branch flipped
    const auto bad = run_checks(faulty);
    CHECK_FALSE(bad.front().passed);
    CHECK(bad.front().name == "kernel trig identity");
    CHECK(checks_to_json(bad)["passed"] == false);
    CHECK(format_checks(bad).find("FAIL  kernel trig identity") != std::string::npos);
}

TEST_CASE("lambda2 summary") {
    const Lambda2Summary flat = lambda2_summary({{0.1, 0.03}, {0.05, 0.028}, {0.02, 0.026}});
    CHECK(flat.bounded);
    CHECK_FALSE(flat.monotone_growth);
    CHECK(flat.ratio == doctest::Approx(0.03 / 0.026));
    const Lambda2Summary growing = lambda2_summary({{0.02, 0.09}, {0.1, 0.03}, {0.05, 0.05}});
    CHECK(growing.monotone_growth);
    CHECK_FALSE(growing.bounded);
    CHECK(growing.epsilons == std::vector<double>{0.1, 0.05, 0.02});
    CHECK_FALSE(lambda2_summary({{0.1, 0.01}, {0.05, 0.2}}).bounded);
}

TEST_CASE("sweep writes stamped files and reports eps = 0 without a mode") {
    const fs::path dir = scratch("sweep");
    RunConfig cfg;
    cfg.epsilons = {0.1, 0.0};
    cfg.output_dir = dir.string();
    cfg.jobs = 2;
    std::ostringstream log;
    const SweepReport rep = run_sweep(cfg, log);
    REQUIRE(rep.items.size() == 2);
    CHECK(rep.items[0].ok);
    CHECK_FALSE(rep.items[1].ok);
    CHECK(rep.items[1].message.find("no periodic mode") != std::string::npos);
    CHECK_FALSE(rep.all_ok());
    for (const char* f : {"eigen_0.1.json", "mode_0.1.csv", "residuals_0.1.json", "sweep_summary.json"})
        CHECK(fs::exists(dir / f));
    CHECK_FALSE(fs::exists(dir / "eigen_0.json"));
    std::ifstream in(dir / "residuals_0.1.json");
    const Json j = Json::parse(in);
    CHECK(j["config_hash"] == config_hash(cfg));
    CHECK(j["residuals"]["rescaled_left"].get<double>() < 1e-6);
    fs::remove_all(dir);
}

TEST_CASE("VORTEX_MODES_OUT overrides the configured directory") {
    RunConfig cfg;
    cfg.output_dir = "configured";
    ::setenv("VORTEX_MODES_OUT", "from_env", 1);
    CHECK(output_directory(cfg) == "from_env");
    ::unsetenv("VORTEX_MODES_OUT");
    CHECK(output_directory(cfg) == "configured");
}

TEST_CASE("profile dump and figures") {
    const fs::path dir = scratch("figures");
    RunConfig cfg;
    cfg.output_dir = dir.string();
    cfg.samples = 64;
    std::ostringstream log;
    const auto dumped = run_profile_dump(cfg, log);
    CHECK(fs::exists(dir / "profile_0.1.csv"));
    CHECK(fs::exists(dir / "radial_limit_n4.csv"));
    const auto figs = run_figures(cfg, log);
    for (const char* f : {"profiles.svg", "c_gap.svg", "c_gap_zoom.svg", "mode_heatmap.svg"}) CHECK(fs::exists(dir / f));
    std::ifstream in(dir / "c_gap_zoom.svg");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("config_hash=" + config_hash(cfg)) != std::string::npos);
    fs::remove_all(dir);
}
