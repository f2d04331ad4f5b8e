#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vortex/profiles.hpp"
#include "vortex/radial_ode.hpp"

namespace vortex {

struct SolverOptions {
    GridSpec grid;
    double quad_rel_tol = 1e-10;
    double root_tol = 1e-13;
    double eps0 = kDefaultEps0;
    double margin = 5e-4;  // fraction of the bracket width dropped at each end
    double lambda2_bound = 50.0;
    bool verify = true;    // attach the integral-equation residual report
};

struct Lambda {
    double total = 0.0;
    double lambda0 = 0.0;
    double lambda1 = 0.0;  // (total - lambda0) / eps
    double lambda2 = 0.0;  // (total - lambda0 - eps * lambda1_ref) / (eps^2 log^2 eps)
    double lambda1_ref = 0.0;
    double epsilon = 0.0;
};

struct ResidualReport {
    double left = 0.0;      // max |N_L| / scale over the left collocation points
    double right = 0.0;
    double physical = 0.0;  // max relative residual of the W_n equation on the support
    double N_L_at_1 = 0.0;  // N_L(1-) / scale
    double N_R_at_1 = 0.0;
    double scale = 0.0;     // max(|H_L|, |H_R|) on the collocation grid
    double jacobian_mismatch = 0.0;  // physical vs rescaled residuals at shared radii
    std::vector<double> left_points, right_points, physical_radii;
    bool trivial = false;   // (A, B) = (0, 0)
};

struct EigenResult {
    Lambda lambda;
    int n = 0;
    double I1 = 0.0, I2 = 0.0;
    double A = 0.0, B = 0.0;
    double q_factor = 0.0;  // ((1 - eps/2) / (1 + eps/2))^n
    double det = 0.0;
    std::pair<double, double> bracket;
    int iterations = 0;
    ResidualReport residuals;
    RadialSolution h_L, h_R;
    std::vector<std::string> warnings;
};

using ProfileSlope = std::function<double(double)>;

// -(a/2n) int_0^1 varpi_0'(s a) s^n h_L(s) / (lambda + c_L(s, eps)) ds
double compute_I1(const RadialSolution& h_L, double lambda, double epsilon, int n, double rel_tol = 1e-10,
                  const ProfileSlope& slope = base_profile_derivative);
// -(b/2n) int_1^inf varpi_0'(s b) s^-n h_R(s) / (lambda + c_R(s, eps)) ds
double compute_I2(const RadialSolution& h_R, double lambda, double epsilon, int n, double rel_tol = 1e-10,
                  const ProfileSlope& slope = base_profile_derivative);

double q_factor(double epsilon, int n);
// 1 + I1 + I2 + (1 - q^2) I1 I2 with q the q_factor.
double determinant_formula(double I1, double I2, double q);

struct DeterminantEval {
    double det, I1, I2;
    RadialSolution h_L, h_R;
};
DeterminantEval evaluate_determinant(double lambda, double epsilon, int n, const SolverOptions& opts = {});
double determinant(double lambda, double epsilon, int n, const SolverOptions& opts = {});

// Kernel of the 2x2 matching matrix, max(|A|, |B|) = 1 and the larger entry positive.
std::pair<double, double> null_vector(double I1, double I2, double epsilon, int n);
std::pair<double, double> normalize_amplitudes(double A, double B);

struct Lambda1Report {
    double derived = 0.0;        // root of the limit of 1 + I1 + I2
    double printed_weighted = 0.0;  // printed constants, log term weighted by varpi_0'(1)
    double as_printed = 0.0;     // printed constants and weight
    double C_L = 0.0, C_R = 0.0;
    double Z_L = 0.0, Z_R = 0.0; // printed constants
    double harmonic = 0.0;       // int_0^1 (x^n - 1)/(x - 1) dx
};

// Leading-order lambda_1 from the eps = 0 solutions. Throws BracketError if a root leaves the window.
Lambda1Report lambda1_leading(int n, const GridSpec& grid = {});

// (-log2/2, -(1 - log2)/2)
std::pair<double, double> lambda1_window();

EigenResult solve_lambda(double epsilon, int n, const SolverOptions& opts = {});

}  // namespace vortex
