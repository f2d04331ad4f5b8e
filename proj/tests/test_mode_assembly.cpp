#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vortex/errors.hpp"
#include "vortex/mode_assembly.hpp"
#include "vortex/profiles.hpp"

using namespace vortex;

namespace {

const EigenResult& solved() {
    static const EigenResult r = solve_lambda(0.05, 4);
    return r;
}

}  // namespace

TEST_CASE("assembled mode: W_n vanishes on the plateau and rotates rigidly") {
    const ModeField m = assemble_mode(solved());
    CHECK(m.W_n(1.0) == 0.0);
    CHECK(m.h_n(1.0) == 0.0);
    CHECK(m.W_n(0.5) != 0.0);
    const double r = 0.8, th = 0.3, t = 2.0;
    CHECK(m.field(r, th, t) == doctest::Approx(m.W_n(r) * std::cos(m.n * (th - m.lambda * t))));
    CHECK(m.H_L(1.0) == doctest::Approx(m.A));
    CHECK(m.H_R(1.0) == doctest::Approx(m.B));
}

TEST_CASE("integral equations hold at the eigenvalue") {
    const ResidualReport rep = verify_integral_equations(solved());
    CHECK(rep.left < 1e-6);
    CHECK(rep.right < 1e-6);
    CHECK(rep.physical < 1e-6);
    CHECK(std::abs(rep.N_L_at_1) < 1e-6);
    CHECK(std::abs(rep.N_R_at_1) < 1e-6);
    CHECK(rep.jacobian_mismatch < 1e-8);
    CHECK_FALSE(rep.trivial);
    CHECK(rep.left_points.size() == 60);
    for (double x : rep.left_points) CHECK(x < 1.0);
    for (double x : rep.right_points) CHECK(x > 1.0);
}

TEST_CASE("integral equations fail off the eigenvalue") {
    const EigenResult& e = solved();
    const double lam = e.lambda.total + 1e-4;
    const RadialSolution hL = integrate_radial(OdeProblem::make(Side::left, 4, 0.05, lam));
    const RadialSolution hR = integrate_radial(OdeProblem::make(Side::right, 4, 0.05, lam));
    const ModeField off = make_mode(0.05, 4, lam, e.A, e.B, hL, hR);
    const ResidualReport rep = verify_integral_equations(off);
    CHECK(std::max(rep.left, rep.right) > 1e-6);
}

TEST_CASE("zero amplitudes give the trivial report") {
    const EigenResult& e = solved();
    const ModeField zero = make_mode(0.05, 4, e.lambda.total, 0.0, 0.0, e.h_L, e.h_R);
    CHECK(verify_integral_equations(zero).trivial);
}

TEST_CASE("make_mode rejects n < 2") {
    const EigenResult& e = solved();
    CHECK_THROWS_AS(make_mode(0.05, 1, e.lambda.total, e.A, e.B, e.h_L, e.h_R), AssemblyError);
}

TEST_CASE("physical residual is the Jacobian image of the rescaled one") {
    // R_W(r) = varpi'(r) N(r / a) / (2 n r) on the left.
    const ModeField m = assemble_mode(solved());
    const double a = m.inner();
    for (double x : {0.3, 0.7}) {
        const double r = a * x;
        const double expected = base_profile_derivative(r) * left_residual(m, x) / (2.0 * m.n * r);
        CHECK(std::abs(physical_residual(m, r) - expected) < 1e-10);
    }
}

TEST_CASE("difference scaling table is bounded over a short sweep") {
    const auto rows = difference_scaling_table(4, {{0.1, 0.33036573039769}, {0.05, 0.33825403973742}});
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.right_ratio > 0.0);
        CHECK(r.left_ratio > 0.0);
        CHECK(r.right_ratio == doctest::Approx(r.right_norm / (r.epsilon * std::log(1.0 / r.epsilon))));
    }
    CHECK(rows[1].right_norm < rows[0].right_norm);
    CHECK_THROWS(difference_scaling_study(4, {0.05, 0.1}));
}

TEST_CASE("figure data") {
    FigureParams p;
    p.samples = 101;
    const auto prof = figure_data(FigureKind::profiles, p);
    REQUIRE(prof.size() == 1);
    CHECK(prof[0].rows.size() == 101);
    CHECK(prof[0].columns.size() == 3);

    p.epsilon = 0.01;
    const auto gap = figure_data(FigureKind::c_gap, p).front();
    double r_star = 0.0, lo = 0.0, hi = 0.0;
    for (const auto& [k, v] : gap.meta) {
        if (k == "r_star") r_star = v;
        if (k == "gap_lower") lo = v;
        if (k == "gap_upper") hi = v;
    }
    CHECK(r_star > 0.995);
    CHECK(r_star < 1.005);
    CHECK(lo == doctest::Approx(-eval_c(SideCoefficient{Side::right, 0.01}, 1.0)));
    CHECK(hi == doctest::Approx(-eval_c(SideCoefficient{Side::left, 0.01}, 1.0)));

    CHECK_THROWS_AS(figure_data(FigureKind::mode, p), DomainError);
    const ModeField m = assemble_mode(solved());
    p.mode = &m;
    p.epsilon = 0.05;
    const auto mode = figure_data(FigureKind::mode, p);
    REQUIRE(mode.size() == 2);
    CHECK(mode[1].rows.size() == static_cast<std::size_t>((101 / 4) * p.theta_samples));
}

TEST_CASE("plateau crossing solves lambda + c(r*) = 0 on the plateau") {
    const double eps = 0.05;
    const auto [lo, hi] = lambda_bracket(eps);
    for (double t : {0.1, 0.5, 0.9}) {
        const double lam = lo + t * (hi - lo);
        const double r = plateau_crossing(eps, lam);
        CHECK(r > 1.0 - eps / 2);
        CHECK(r < 1.0 + eps / 2);
        CHECK(std::abs(lam + eval_c(VortexProfile(eps), r)) < 1e-12);
    }
}
