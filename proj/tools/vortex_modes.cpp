// vortex_modes: rotating eigenmodes of the plateau vortex.
//
//   vortex_modes check [--json]
//   vortex_modes solve --eps 0.1 --n 4
//   vortex_modes sweep --eps 0.1,0.07,0.05,0.035,0.02 [--jobs 4]
//   vortex_modes figures
//   vortex_modes profile --dump
//
// Exit codes: 0 ok, 1 check failure, 2 solver failure, 3 config error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "vortex/checks.hpp"
#include "vortex/config.hpp"
#include "vortex/errors.hpp"
#include "vortex/pipeline.hpp"

namespace {

constexpr int kOk = 0, kCheckFailure = 1, kSolverFailure = 2, kConfigError = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotating eigenmodes of the plateau vortex"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir, eps_text;
    std::optional<int> n, jobs;
    bool json = false, dump = false;
    app.add_option("--config", config_path, "key=value or JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (VORTEX_MODES_OUT takes precedence)");
    app.add_option("--jobs", jobs, "worker threads for sweeps");

    auto* check = app.add_subcommand("check", "fast invariant suite");
    check->add_flag("--json", json, "machine-readable report");

    auto* solve = app.add_subcommand("solve", "solve one eps");
    solve->add_option("--eps", eps_text, "plateau width")->required();
    solve->add_option("--n", n, "azimuthal wavenumber");

    auto* sweep = app.add_subcommand("sweep", "solve a list of eps");
    sweep->add_option("--eps", eps_text, "comma-separated plateau widths");
    sweep->add_option("--n", n, "azimuthal wavenumber");

    auto* figures = app.add_subcommand("figures", "write SVG figures and their CSVs");
    figures->add_option("--eps", eps_text, "eps for the mode heatmap");
    figures->add_option("--n", n, "azimuthal wavenumber");

    auto* profile = app.add_subcommand("profile", "profile and eps = 0 radial solution tables");
    profile->add_flag("--dump", dump, "write the CSV tables")->required();
    profile->add_option("--eps", eps_text, "comma-separated plateau widths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (check->parsed()) {
        const auto results = vortex::run_checks();
        bool ok = true;
        for (const auto& r : results) ok = ok && r.passed;
        if (json) std::cout << vortex::checks_to_json(results).dump(2) << "\n";
        else std::cout << vortex::format_checks(results) << (ok ? "all checks passed\n" : "some checks FAILED\n");
        return ok ? kOk : kCheckFailure;
    }

    vortex::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = vortex::load_config(config_path);
        if (!eps_text.empty()) cfg.epsilons = vortex::parse_list(eps_text);
        if (solve->parsed() && cfg.epsilons.size() != 1)
            throw vortex::ConfigError("solve takes a single eps; use sweep for lists");
        if (n) cfg.n = *n;
        if (jobs) cfg.jobs = *jobs;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        vortex::validate(cfg);
    } catch (const vortex::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        if (solve->parsed() || sweep->parsed()) {
            const auto report = vortex::run_sweep(cfg, std::cout);
            if (!report.all_ok()) {
                for (const auto& item : report.items)
                    if (!item.ok) std::cerr << "solve failed: "
                                            << item.message << "\n";
                return kSolverFailure;
            }
            return kOk;
        }
        if (figures->parsed()) {
            vortex::run_figures(cfg, std::cout);
            return kOk;
        }
        if (profile->parsed()) {
            vortex::run_profile_dump(cfg, std::cout);
            return kOk;
        }
    } catch (const vortex::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kSolverFailure;
    }
    return kOk;
}
