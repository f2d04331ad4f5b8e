#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vortex/eigensolver.hpp"

namespace vortex {

class ModeField {
public:
    double epsilon = 0.0;
    int n = 0;
    double lambda = 0.0;
    double A = 0.0, B = 0.0;
    RadialSolution h_L, h_R;

    double H_L(double x) const { return A * h_L.value(x); }
    double H_R(double x) const { return B * h_R.value(x); }
    // H / (2 n x (1 -+ eps/2) (lambda + c_{L,R}(x, eps)))
    double f_star_L(double x) const;
    double f_star_R(double x) const;
    // Physical h_n(r) on the support of varpi_eps'; zero on the plateau.
    double h_n(double r) const;
    double W_n(double r) const;
    double field(double r, double theta, double t = 0.0) const;
    double inner() const { return 1.0 - 0.5 * epsilon; }
    double outer() const { return 1.0 + 0.5 * epsilon; }
};

// Throws AssemblyError when |lambda + c| drops below `floor` on the support or n < 2.
ModeField make_mode(double epsilon, int n, double lambda, double A, double B, RadialSolution h_L,
                    RadialSolution h_R, double floor = 1e-13);
ModeField assemble_mode(const EigenResult& eigen);

struct CollocationSpec {
    int left_points = 60;
    int right_points = 60;
    int physical_radii = 30;
    int shared_radii = 10;
    double rel_tol = 1e-12;
    double right_extent = 50.0;  // last right collocation point in x
};

ResidualReport verify_integral_equations(const ModeField& mode, const CollocationSpec& spec = {});
ResidualReport verify_integral_equations(const EigenResult& eigen, const CollocationSpec& spec = {});

// Rescaled equations evaluated at one point (absolute, not normalized).
double left_residual(const ModeField& mode, double x, double rel_tol = 1e-12);
double right_residual(const ModeField& mode, double x, double rel_tol = 1e-12);
// (lambda + c(r)) W_n(r) - (1/n) varpi_eps'(r) int K_n(r/s) W_n(s) ds
double physical_residual(const ModeField& mode, double r, double rel_tol = 1e-12);

struct ScalingRow {
    double epsilon = 0.0;
    double lambda = 0.0;
    double right_norm = 0.0;  // sup x^n |h_R^eps - h_R^0| on [1, 1e3]
    double left_norm = 0.0;   // sup x^-n |h_L^eps - h_L^0| on [1e-3, 1]
    double right_ratio = 0.0; // right_norm / (eps log(1/eps))
    double left_ratio = 0.0;
};

std::vector<ScalingRow> difference_scaling_study(int n, const std::vector<double>& eps_list,
                                                 const SolverOptions& opts = {});
// Same, with the eigenvalues already known (pairs of eps, lambda).
std::vector<ScalingRow> difference_scaling_table(int n, const std::vector<std::pair<double, double>>& solved,
                                                 const GridSpec& grid = {});

struct Dataset {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> meta;
};

enum class FigureKind { profiles, c_gap, mode };

struct FigureParams {
    double epsilon = 0.1;
    double lambda = 0.0;  // c_gap marker; 0 picks the bracket midpoint
    double r_min = 0.0, r_max = 3.0;
    int samples = 400;
    int theta_samples = 64;
    const ModeField* mode = nullptr;  // required for FigureKind::mode
};

// profiles: (r, varpi_0, varpi_eps). c_gap: (r, c, branch) plus the gap band and r* in meta.
// mode: two datasets, W_n(r) and the long-form (r, theta, W_n(r) cos(n theta)) heatmap.
std::vector<Dataset> figure_data(FigureKind kind, const FigureParams& params);

// r* in the plateau with lambda + c(r*) = 0.
double plateau_crossing(double epsilon, double lambda);

}  // namespace vortex
