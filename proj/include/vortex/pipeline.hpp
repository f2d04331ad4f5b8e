#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "vortex/config.hpp"
#include "vortex/eigensolver.hpp"

namespace vortex {

SolverOptions solver_options(const RunConfig& cfg);

// Output directory after the VORTEX_MODES_OUT override.
std::string output_directory(const RunConfig& cfg);

struct SolveOutcome {
    double epsilon = 0.0;
    bool ok = false;
    std::string message;
    std::optional<EigenResult> result;
};

struct Lambda2Summary {
    std::vector<double> epsilons;  // in sweep order
    std::vector<double> lambda2;
    double max_abs = 0.0;
    double min_abs = 0.0;
    double ratio = 0.0;            // max_abs / min_abs
    bool monotone_growth = false;  // |lambda2| strictly increasing as eps decreases (3+ points)
    bool bounded = false;          // ratio < 10 and no monotone growth
};

// Pairs (eps, lambda2); order does not matter.
Lambda2Summary lambda2_summary(std::vector<std::pair<double, double>> samples);

struct SweepReport {
    std::vector<SolveOutcome> items;  // same order as cfg.epsilons
    std::optional<Lambda2Summary> lambda2;
    std::vector<std::string> files;
    bool all_ok() const;
};

// Solves every eps of the config on cfg.jobs workers, then writes eigen_{eps}.json, mode_{eps}.csv and
// residuals_{eps}.json per solved eps, plus sweep_summary.json when more than one eps was given.
// Log lines are emitted in config order after the pool finishes.
SweepReport run_sweep(const RunConfig& cfg, std::ostream& log);

// profiles.svg (eps = 0.1), c_gap.svg and c_gap_zoom.svg (eps = 0.01), mode_heatmap.svg for the first
// configured eps, plus the CSVs behind them.
std::vector<std::string> run_figures(const RunConfig& cfg, std::ostream& log);

// profile_{eps}.csv with (r, varpi_0, varpi_eps, c) and radial_limit_n{n}.csv with (x, h, h') at eps = 0.
std::vector<std::string> run_profile_dump(const RunConfig& cfg, std::ostream& log);

}  // namespace vortex
