#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "vortex/eigensolver.hpp"
#include "vortex/errors.hpp"
#include "vortex/profiles.hpp"

using namespace vortex;
using boost::math::quadrature::gauss_kronrod;

namespace {

double gap_direct(double x) { return std::log(2.0) / 2.0 - std::log1p(x * x) / (2.0 * x * x); }
double slope_direct(double x) { return -2.0 * x / ((1.0 + x * x) * (1.0 + x * x)); }

// Leading lambda_1 from the eps = 0 solutions, assembled independently of the library:
// 1 - (1/2n)[(w1/k) u + C_L + C_R] = 0 with u = log(-mu_L/mu_R), and
// lambda_1 = -(p + e^u s)/(1 + e^u), p = (1 - log 2)/2, s = log 2 / 2.
double lambda1_oracle(int n) {
    const RadialSolution hL = integrate_radial(OdeProblem::limit(Side::left, n));
    const RadialSolution hR = integrate_radial(OdeProblem::limit(Side::right, n));
    const double k = std::log(2.0) - 0.5, w1 = -0.5;
    auto fl = [&](double x) {
        return slope_direct(x) * hL.value(x) * std::pow(x, n) / gap_direct(x) - w1 / (k * (x - 1.0));
    };
    auto fr = [&](double x) {
        return slope_direct(x) * hR.value(x) * std::pow(x, -n) / gap_direct(x) - w1 / (k * (x - 1.0));
    };
    auto tail = [&](double x) { return slope_direct(x) * hR.value(x) * std::pow(x, -n) / gap_direct(x); };
    const double CL = gauss_kronrod<double, 61>::integrate(fl, 0.0, 1.0, 12, 1e-12);
    const double CR = gauss_kronrod<double, 61>::integrate(fr, 1.0, 2.0, 12, 1e-12) +
                      gauss_kronrod<double, 61>::integrate(tail, 2.0, std::numeric_limits<double>::infinity(), 12, 1e-12);
    const double u = (2.0 * n - CL - CR) * k / w1;
    const double p = (1.0 - std::log(2.0)) / 2.0, s = std::log(2.0) / 2.0;
    return -(p + std::exp(u) * s) / (1.0 + std::exp(u));
}

}  // namespace

TEST_CASE("q factor and determinant formula") {
    CHECK(q_factor(0.1, 4) == doctest::Approx(std::pow(0.95 / 1.05, 4)).epsilon(1e-15));
    CHECK(q_factor(0.0, 4) == 1.0);
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0), uq(0.5, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double I1 = u(gen), I2 = u(gen), q = uq(gen);
        // det [[1 + I1, q I2], [q I1, 1 + I2]]
        CHECK(determinant_formula(I1, I2, q) == doctest::Approx((1 + I1) * (1 + I2) - q * q * I1 * I2));
    }
}

TEST_CASE("null vector annihilates the singular matching matrix") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double eps = 0.07;
    const int n = 4;
    const double q = q_factor(eps, n);
    for (int i = 0; i < 100; ++i) {
        const double I1 = u(gen);
        const double I2 = -(1.0 + I1) / (1.0 + (1.0 - q * q) * I1);
        const auto [A, B] = null_vector(I1, I2, eps, n);
        CHECK(std::max(std::abs(A), std::abs(B)) == doctest::Approx(1.0));
        CHECK((std::abs(A) >= std::abs(B) ? A : B) > 0.0);
        CHECK(std::abs((1 + I1) * A + q * I2 * B) < 1e-9 * (1 + std::abs(I1) + std::abs(I2)));
        CHECK(std::abs(q * I1 * A + (1 + I2) * B) < 1e-9 * (1 + std::abs(I1) + std::abs(I2)));
    }
}

TEST_CASE("null vector with a vanishing first row is (1, q)") {
    // I1 = -1, I2 = 0: rows (0, 0) and (-q, 1).
    const double eps = 0.1;
    const auto [A, B] = null_vector(-1.0, 0.0, eps, 4);
    CHECK(A == doctest::Approx(1.0));
    CHECK(B == doctest::Approx(q_factor(eps, 4)));
}

TEST_CASE("null vector and normalization errors") {
    CHECK_THROWS_AS(normalize_amplitudes(0.0, 0.0), DegenerateMatrixError);
    // I1 = I2 = -1 and q = 0 is impossible; with q > 0 both rows vanish only if 1 + I = 0 and q I = 0.
    const auto [A, B] = normalize_amplitudes(-2.0, 1.0);
    CHECK(A == 1.0);
    CHECK(B == -0.5);
}

TEST_CASE("I1 and I2 are linear in the profile slope") {
    const double eps = 0.05;
    const auto [lo, hi] = lambda_bracket(eps);
    const double lam = 0.5 * (lo + hi);
    const RadialSolution hL = integrate_radial(OdeProblem::make(Side::left, 4, eps, lam));
    const RadialSolution hR = integrate_radial(OdeProblem::make(Side::right, 4, eps, lam));
    auto twice = [](double r) { return 2.0 * base_profile_derivative(r); };
    CHECK(compute_I1(hL, lam, eps, 4, 1e-10, twice) == doctest::Approx(2.0 * compute_I1(hL, lam, eps, 4)));
    CHECK(compute_I2(hR, lam, eps, 4, 1e-10, twice) == doctest::Approx(2.0 * compute_I2(hR, lam, eps, 4)));
    // Left denominator is negative and varpi_0' < 0, so I1 < 0; the right one is positive.
    CHECK(compute_I1(hL, lam, eps, 4) < 0.0);
    CHECK(compute_I2(hR, lam, eps, 4) > 0.0);
}

TEST_CASE("determinant changes sign across the gap") {
    for (double eps : {0.1, 0.05}) {
        const auto [lo, hi] = lambda_bracket(eps);
        const double m = 5e-4 * (hi - lo);
        CHECK(determinant(lo + m, eps, 4) * determinant(hi - m, eps, 4) < 0.0);
    }
}

TEST_CASE("leading lambda_1 agrees with an independent assembly") {
    const Lambda1Report rep = lambda1_leading(4);
    CHECK(rep.derived == doctest::Approx(lambda1_oracle(4)).epsilon(1e-8));
    CHECK(rep.derived == doctest::Approx(-0.1791810332).epsilon(1e-9));
    CHECK(rep.harmonic == doctest::Approx(25.0 / 12.0).epsilon(1e-12));
    const auto [w_lo, w_hi] = lambda1_window();
    CHECK(w_lo == doctest::Approx(-std::log(2.0) / 2.0));
    CHECK(w_hi == doctest::Approx(-(1.0 - std::log(2.0)) / 2.0));
    for (double v : {rep.derived, rep.printed_weighted, rep.as_printed}) {
        CHECK(v > w_lo);
        CHECK(v < w_hi);
    }
    // The printed-constant variants, frozen.
    CHECK(rep.printed_weighted == doctest::Approx(-0.1787598950).epsilon(1e-8));
    CHECK(rep.as_printed == doctest::Approx(-0.2925274980).epsilon(1e-8));
}

TEST_CASE("solve_lambda at eps = 0.1, n = 4") {
    const EigenResult r = solve_lambda(0.1, 4);
    CHECK(r.lambda.total == doctest::Approx(0.33036573039769).epsilon(1e-12));
    CHECK(r.lambda.total > r.bracket.first);
    CHECK(r.lambda.total < r.bracket.second);
    CHECK(std::abs(r.det) < 1e-8);
    CHECK(std::max(std::abs(r.A), std::abs(r.B)) == doctest::Approx(1.0));
    CHECK(r.lambda.lambda1 == doctest::Approx((r.lambda.total - lambda0()) / 0.1));
    CHECK(r.lambda.lambda1_ref == doctest::Approx(-0.1791810332).epsilon(1e-9));
    CHECK(r.residuals.left < 1e-6);
    CHECK(r.residuals.right < 1e-6);
    CHECK(r.residuals.physical < 1e-6);
    CHECK(r.warnings.empty());
    const double q = r.q_factor;
    CHECK(std::abs((1 + r.I1) * r.A + q * r.I2 * r.B) < 1e-8);
    CHECK(std::abs(q * r.I1 * r.A + (1 + r.I2) * r.B) < 1e-8);
}

TEST_CASE("solve_lambda refuses eps = 0 and n < 2") {
    CHECK_THROWS_AS(solve_lambda(0.0, 4), NoEigenvalueError);
    CHECK_THROWS(solve_lambda(0.1, 1));
}

TEST_CASE("solve_lambda warns below n = 4") {
    SolverOptions o;
    o.verify = false;
    const EigenResult r = solve_lambda(0.1, 3, o);
    CHECK_FALSE(r.warnings.empty());
}
