#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "vortex/profiles.hpp"
#include "vortex/series.hpp"

namespace vortex {

// Both sides are solved in a variable xi on (0, 1]: xi = x on the left, xi = 1/x on the right.
// In xi the equation reads  xi^2 h'' + xi h' - (n^2 + xi^2 G(xi)) h = 0  with
//   G_L(x) = 2a^2 / ((1 + a^2 x^2)^2 (lambda + c_L(x, eps))),        a = 1 - eps/2,
//   G_R(z) = 2b^2 / ((z^2 + b^2)^2 (lambda + c_R(1/z, eps))),        b = 1 + eps/2,
// so that xi^2 G is the potential Psi of the physical equation.
struct OdeProblem {
    Side side = Side::left;
    int n = 4;
    double epsilon = 0.0;
    double lambda = 0.0;
    std::function<double(double)> coefficient;               // G(xi)
    std::function<SeriesAtPoint(int)> coefficient_series;    // G about xi = 0
    bool singular_endpoint = false;  // eps = 0: simple pole of G at xi = 1

    // Physical problem. For eps = 0 lambda is forced to lambda0.
    static OdeProblem make(Side side, int n, double epsilon, double lambda);
    static OdeProblem limit(Side side, int n);

    // Psi at the physical point x.
    double potential(double x) const;
    // lambda + c_{L,R}(x, eps) at the physical point x.
    double denominator(double x) const;
};

struct GridSpec {
    double start_offset = 1e-3;
    int series_order = 40;
    double rel_tol = 1e-12;
    double abs_tol = 1e-16;
    int samples = 400;
    double match_point = 0.8;    // xi where eps = 0 solutions hand over to the series at 1
    double series_radius = 0.25;
    double xi_min = 1e-3;        // far end for the second solutions
};

struct Trajectory;

struct EndpointBasis {
    SeriesAtPoint g1;  // analytic, g1(1) = 0, g1'(1) = 1
    SeriesAtPoint g2;  // g2 = beta g1 log|t| + 1 + ..., t = xi - 1
    double log_coefficient = 0.0;
};

// Frobenius basis at the regular singular point xi = 1 of the eps = 0 equation.
EndpointBasis endpoint_basis(Side side, int n, int order, double radius);

class RadialSolution {
public:
    OdeProblem problem;
    std::vector<double> grid;         // physical x, increasing
    std::vector<double> values;
    std::vector<double> derivatives;  // d/dx
    SeriesAtPoint origin_series;      // in xi, leading coefficient 1
    double endpoint_value_at_1 = 0.0; // h(1) before normalization, leading coefficient 1
    double handoff_error = 0.0;       // series vs integration at twice the start offset
    double min_value = 0.0;           // over the samples

    double value(double x) const;
    double derivative(double x) const;
    std::array<double, 2> eval(double x) const;  // (h, dh/dx)
    double x_lo() const;
    double x_hi() const;

    // In the integration variable.
    std::array<double, 2> eval_xi(double xi) const;

private:
    friend RadialSolution integrate_radial(const OdeProblem&, const GridSpec&);
    friend RadialSolution second_solution(Side, int, const GridSpec&);

    std::shared_ptr<const Trajectory> traj_;
    double xi0_ = 0.0;            // origin series used below this point (0 if none)
    double origin_scale_ = 1.0;   // series -> trajectory units
    std::optional<EndpointBasis> basis_;
    double basis_from_ = 2.0;     // basis used for xi >= this point
    double c1_ = 0.0, c2_ = 0.0;  // combination of the basis in trajectory units
    double scale_ = 1.0;          // trajectory units -> normalized
    double xi_lo_ = 0.0, xi_hi_ = 1.0;

    void fill_samples(int samples);
};

SeriesAtPoint frobenius_origin_series(const OdeProblem& problem, int order);

RadialSolution integrate_radial(const OdeProblem& problem, const GridSpec& grid = {});

// eps = 0 solution analytic at x = 1 with g(1) = 0 and unit slope in xi.
RadialSolution second_solution(Side side, int n, const GridSpec& grid = {});

struct WronskianReport {
    double max_deviation;
    double min_abs;  // min |x W|; zero signals linear dependence
    bool dependent;
};

WronskianReport wronskian_report(const RadialSolution& a, const RadialSolution& b, double lo, double hi,
                                 int samples = 400);

struct PicardResult {
    std::vector<double> z;
    std::vector<double> h;  // z^n f(z)
    std::vector<double> ratios;  // successive-difference ratios in the weighted norm
    double predicted_factor = 0.0;
    int iterations = 0;
    double value(double zq) const;

    std::vector<double> f_;
    std::vector<double> panel_edges_;
    int nodes_per_panel_ = 0;
    int n_ = 0;
};

// Fixed-point iteration of the right-side integral equation at eps = 0 on [0, a].
PicardResult picard_oracle_right(int n, double alpha, double a, int iterations = 60);

}  // namespace vortex
