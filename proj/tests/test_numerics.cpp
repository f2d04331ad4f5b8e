#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vortex/errors.hpp"
#include "vortex/quadrature.hpp"
#include "vortex/roots.hpp"
#include "vortex/series.hpp"

using namespace vortex;

TEST_CASE("adaptive_quad: harmonic number H_4 from (x^4 - 1)/(x - 1)") {
    const QuadResult r = adaptive_quad([](double x) { return (std::pow(x, 4) - 1.0) / (x - 1.0); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(25.0 / 12.0).epsilon(1e-13));
    CHECK(r.error < 1e-10);
}

TEST_CASE("adaptive_quad: endpoint singularities with grading") {
    QuadratureSpec q;
    q.rel_tol = 1e-12;
    q.grading_center = 0.0;
    const double v = adaptive_quad([](double x) { return std::log(x); }, 0.0, 1.0, q).value;
    CHECK(v == doctest::Approx(-1.0).epsilon(1e-11));

    const double w = adaptive_quad([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, q).value;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("adaptive_quad: kinks at split points") {
    QuadratureSpec q;
    q.split_points = {0.3};
    const double v = adaptive_quad([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, q).value;
    CHECK(v == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
}

TEST_CASE("adaptive_quad: reversed and empty intervals") {
    auto f = [](double x) { return std::exp(x); };
    CHECK(adaptive_quad(f, 1.0, 0.0).value == doctest::Approx(-(std::exp(1.0) - 1.0)).epsilon(1e-13));
    CHECK(adaptive_quad(f, 0.5, 0.5).value == 0.0);
}

TEST_CASE("semiinfinite_quad: algebraic tails") {
    CHECK(semiinfinite_quad([](double x) { return 1.0 / (x * x); }, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));
    const double v = semiinfinite_quad([](double x) { return 1.0 / (1.0 + x * x); }, 1.0).value;
    CHECK(v == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-11));
    const double w = semiinfinite_quad([](double x) { return std::pow(x, -5.0); }, 2.0).value;
    CHECK(w == doctest::Approx(1.0 / (4.0 * 16.0)).epsilon(1e-12));
}

TEST_CASE("brent_root: Dottie number and bracket errors") {
    const RootResult r = brent_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0, 1e-15);
    CHECK(r.root == doctest::Approx(0.7390851332151607).epsilon(1e-15));
    CHECK(std::abs(r.value) < 1e-14);
    CHECK_THROWS_AS(brent_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
}

TEST_CASE("brent_root: exact endpoint root") {
    const RootResult r = brent_root([](double x) { return x - 2.0; }, 2.0, 3.0);
    CHECK(r.root == 2.0);
}

TEST_CASE("golden_max: parabola and varpi_0' shape") {
    CHECK(golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0) == doctest::Approx(0.3).epsilon(1e-7));
    const double r = golden_max([](double x) { return 2.0 * x / ((1.0 + x * x) * (1.0 + x * x)); }, 0.0, 2.0);
    CHECK(r == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-7));
}

TEST_CASE("taylor: reciprocal, log1p and stretch") {
    using namespace taylor;
    const Poly geom = reciprocal({1.0, -1.0}, 6);
    for (double c : geom) CHECK(c == doctest::Approx(1.0));

    const Poly l = log1p({0.0, 1.0}, 8);
    for (int k = 1; k <= 8; ++k) CHECK(l[k] == doctest::Approx((k % 2 ? 1.0 : -1.0) / k));

    const Poly s = stretch({1.0, 1.0, 1.0}, 2.0, 2, 6);  // 1 + 2t^2 + 4t^4
    CHECK(eval(s, 0.5) == doctest::Approx(1.0 + 0.5 + 0.25));

    const Poly m = mul({1.0, 1.0}, {1.0, -1.0}, 4);
    CHECK(eval(m, 0.3) == doctest::Approx(1.0 - 0.09));
}

TEST_CASE("taylor: log1p agrees with std::log1p inside the radius") {
    using namespace taylor;
    const Poly l = log1p({0.0, 1.0, 0.5}, 40);  // log(1 + t + t^2/2)
    for (double t : {-0.2, -0.05, 0.1, 0.25})
        CHECK(eval(l, t) == doctest::Approx(std::log1p(t + 0.5 * t * t)).epsilon(1e-13));
}

TEST_CASE("SeriesAtPoint: evaluation with log powers") {
    SeriesAtPoint s;
    s.center = 1.0;
    s.leading = 1;
    s.coeffs = {{2.0, 3.0}, {-1.0}};  // 2t + 3t log|t| - t^2
    const double x = 1.2, t = 0.2;
    CHECK(s.eval(x) == doctest::Approx(2.0 * t + 3.0 * t * std::log(t) - t * t));
    CHECK(s.derivative(x) == doctest::Approx(2.0 + 3.0 * (std::log(t) + 1.0) - 2.0 * t));
    CHECK(s.log_degree() == 1);
    CHECK(s.coeff(0, 1) == 3.0);
    CHECK(s.coeff(5, 0) == 0.0);
}

TEST_CASE("SeriesAtPoint: product and reciprocal are inverse") {
    const SeriesAtPoint a = taylor::to_series({1.0, 0.5, -0.25, 0.125}, 0.0, 1.0);
    const SeriesAtPoint inv = series_reciprocal(a);
    const SeriesAtPoint one = series_multiply(a, inv);
    for (double x : {0.01, 0.1, -0.1}) CHECK(std::abs(one.eval(x) - 1.0) < std::pow(std::abs(x), 4));
    const SeriesAtPoint sum = series_add(a, series_scale(a, -1.0));
    CHECK(sum.eval(0.3) == doctest::Approx(0.0));
}
