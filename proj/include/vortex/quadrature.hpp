#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace vortex {

using Integrand = std::function<double(double)>;

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::vector<double> split_points;
    // Panels are refined geometrically (ratio 1/2) toward this point.
    std::optional<double> grading_center;
    int grading_levels = 40;
    int max_panels = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

// Globally adaptive Gauss-Kronrod (10,21).
QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

// Integral over [lower, inf) through z = 1/x. Split points and the grading
// center are given in x and mapped.
QuadResult semiinfinite_quad(const Integrand& f, double lower, const QuadratureSpec& spec = {});

}  // namespace vortex
