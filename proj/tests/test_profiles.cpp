#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "vortex/errors.hpp"
#include "vortex/profiles.hpp"

using namespace vortex;
using boost::math::quadrature::gauss_kronrod;

namespace {

// Independent partial mass: Boost Gauss-Kronrod over the pieces of varpi_eps.
double mass_oracle(double eps, double r) {
    const VortexProfile p(eps);
    auto f = [&](double s) { return s * eval_profile(p, s, ProfileKind::perturbed); };
    double total = 0.0, lo = 0.0;
    for (double cut : {p.inner(), p.outer(), r}) {
        const double hi = std::min(cut, r);
        if (hi > lo) total += gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-14);
        lo = std::max(lo, hi);
    }
    return total;
}

double c0_direct(double x) { return -std::log1p(x * x) / (2.0 * x * x); }

}  // namespace

TEST_CASE("base profile and slope") {
    CHECK(base_profile(0.0) == 1.0);
    CHECK(base_profile(1.0) == 0.5);
    CHECK(base_profile_derivative(1.0) == doctest::Approx(-0.5));
    CHECK(lambda0() == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-15));
    for (double r : {0.2, 0.9, 3.0}) {
        const double h = 1e-6;
        CHECK(base_profile_derivative(r) ==
              doctest::Approx((base_profile(r + h) - base_profile(r - h)) / (2 * h)).epsilon(1e-8));
    }
}

TEST_CASE("plateau profile: shifted inside, flat on the plateau, unchanged outside") {
    const double eps = 0.1;
    const VortexProfile p(eps);
    const double a = p.inner(), b = p.outer();
    CHECK(p.jump() == doctest::Approx(base_profile(b) - base_profile(a)));
    CHECK(eval_profile(p, 0.3, ProfileKind::perturbed) == doctest::Approx(base_profile(0.3) + p.jump()));
    CHECK(eval_profile(p, 1.0, ProfileKind::perturbed) == doctest::Approx(base_profile(b)));
    CHECK(eval_profile(p, 2.0, ProfileKind::perturbed) == base_profile(2.0));
    CHECK(eval_profile(p, 1.0, ProfileKind::derivative) == 0.0);
    CHECK(eval_profile(p, 0.5, ProfileKind::derivative) == doctest::Approx(base_profile_derivative(0.5)));
    // Continuous at both plateau edges.
    CHECK(eval_profile(p, a - 1e-12, ProfileKind::perturbed) == doctest::Approx(eval_profile(p, a + 1e-12, ProfileKind::perturbed)));
    CHECK(eval_profile(p, b - 1e-12, ProfileKind::perturbed) == doctest::Approx(eval_profile(p, b + 1e-12, ProfileKind::perturbed)));
}

TEST_CASE("plateau profile is nonincreasing") {
    const VortexProfile p(0.12);
    double prev = eval_profile(p, 0.0, ProfileKind::perturbed);
    for (int i = 1; i <= 3000; ++i) {
        const double v = eval_profile(p, 0.001 * i, ProfileKind::perturbed);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("profile domain errors") {
    CHECK_THROWS_AS(VortexProfile(-0.1), DomainError);
    CHECK_THROWS_AS(eval_profile(VortexProfile(0.1), -1.0, ProfileKind::base), DomainError);
}

TEST_CASE("partial mass against an independent quadrature") {
    for (double eps : {0.0, 0.03, 0.1})
        for (double r : {0.2, 0.96, 0.99, 1.0, 1.04, 1.5, 4.0})
            CHECK(partial_mass(VortexProfile(eps), r) == doctest::Approx(mass_oracle(eps, r)).epsilon(1e-12));
}

TEST_CASE("c at eps = 0 is -log(1 + r^2) / (2 r^2)") {
    for (double r : {0.1, 0.7, 1.0, 2.5})
        CHECK(eval_c(VortexProfile(0.0), r) == doctest::Approx(c0_direct(r)).epsilon(1e-13));
    CHECK(eval_c(VortexProfile(0.0), 0.0) == doctest::Approx(-0.5));
}

TEST_CASE("side coefficients are rescalings of the physical c") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> ux(0.05, 0.999), ue(0.0, 0.15);
    for (int i = 0; i < 200; ++i) {
        const double eps = ue(gen), x = ux(gen);
        const VortexProfile p(eps);
        CHECK(eval_c(SideCoefficient{Side::left, eps}, x) == doctest::Approx(eval_c(p, x * p.inner())).epsilon(1e-12));
        CHECK(eval_c(SideCoefficient{Side::right, eps}, 1.0 / x) ==
              doctest::Approx(eval_c(p, p.outer() / x)).epsilon(1e-12));
    }
}

TEST_CASE("c derivatives by finite differences") {
    const double eps = 0.08, h = 1e-5;
    for (Side s : {Side::left, Side::right})
        for (double x : {0.5, 1.0, 1.7}) {
            const SideCoefficient c{s, eps};
            const double fd_eps =
                (eval_c(SideCoefficient{s, eps + h}, x) - eval_c(SideCoefficient{s, eps - h}, x)) / (2 * h);
            const double fd_x = (eval_c(c, x + h) - eval_c(c, x - h)) / (2 * h);
            const double h2 = 1e-3;
            const double fd2 = (eval_c(SideCoefficient{s, eps + h2}, x, COrder::d_eps) -
                                eval_c(SideCoefficient{s, eps - h2}, x, COrder::d_eps)) / (2 * h2);
            CHECK(eval_c(c, x, COrder::d_eps) == doctest::Approx(fd_eps).epsilon(1e-8));
            CHECK(eval_c(c, x, COrder::d_x) == doctest::Approx(fd_x).epsilon(1e-8));
            CHECK(eval_c(c, x, COrder::d2_eps) == doctest::Approx(fd2).epsilon(1e-5));
        }
}

TEST_CASE("eps derivatives of c at x = 1, eps = 0") {
    CHECK(eval_c(SideCoefficient{Side::left, 0.0}, 1.0, COrder::d_eps) ==
          doctest::Approx((1.0 - std::log(2.0)) / 2.0).epsilon(1e-13));
    CHECK(eval_c(SideCoefficient{Side::right, 0.0}, 1.0, COrder::d_eps) ==
          doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("limit_gap matches the direct formula and has slope log 2 - 1/2 at 1") {
    for (double x : {0.3, 0.8, 0.9, 0.99, 1.01, 1.2, 1.3, 5.0})
        CHECK(limit_gap(x) == doctest::Approx(lambda0() + c0_direct(x)).epsilon(1e-11));
    CHECK(limit_gap(1.0) == 0.0);
    const double t = 1e-7;
    CHECK(limit_gap(1.0 + t) / t == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-6));
    CHECK(limit_gap(0.5) < 0.0);
    CHECK(limit_gap(2.0) > 0.0);
}

TEST_CASE("spectral gap bracket: width equals c(b) - c(a) by quadrature") {
    for (double eps : {0.01, 0.05, 0.1}) {
        const auto [lo, hi] = lambda_bracket(eps);
        const VortexProfile p(eps);
        const double a = p.inner(), b = p.outer();
        const double width = -mass_oracle(eps, b) / (b * b) + mass_oracle(eps, a) / (a * a);
        CHECK(hi - lo == doctest::Approx(width).epsilon(1e-11));
        CHECK(lo < lambda0());
        CHECK(hi < lambda0() + 1e-12);
        CHECK(lo == doctest::Approx(-eval_c(SideCoefficient{Side::right, eps}, 1.0)));
    }
    CHECK_THROWS_AS(lambda_bracket(0.0), BracketError);
    CHECK_THROWS_AS(lambda_bracket(0.2), DomainError);
}

TEST_CASE("sup |varpi_0'| is 3 sqrt(3)/8 at 1/sqrt(3)") {
    const DerivativeSup s = base_derivative_sup();
    CHECK(s.value == doctest::Approx(3.0 * std::sqrt(3.0) / 8.0).epsilon(1e-12));
    CHECK(s.location == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("Holder distance: sup part equals the jump, norm is sup plus seminorm") {
    const double eps = 0.1;
    const HolderReport h = holder_distance(eps, 0.5, 600);
    CHECK(h.sup_norm == doctest::Approx(-VortexProfile(eps).jump()).epsilon(1e-12));
    CHECK(h.norm == doctest::Approx(h.sup_norm + h.seminorm));
    CHECK(h.bound == doctest::Approx(3.0 * std::sqrt(3.0) / 8.0 * std::sqrt(eps)));
    // The seminorm alone is within the bound at alpha = 0.75.
    const HolderReport h75 = holder_distance(eps, 0.75, 600);
    CHECK(h75.seminorm <= h75.bound);
    CHECK(h75.norm <= h75.bound);
    CHECK_THROWS_AS(holder_distance(eps, 1.0), DomainError);
    CHECK_THROWS_AS(holder_distance(0.0, 0.5), DomainError);
}

TEST_CASE("Holder seminorm grows with the grid and saturates") {
    const double coarse = holder_distance(0.05, 0.5, 100).seminorm, fine = holder_distance(0.05, 0.5, 1200).seminorm;
    CHECK(fine >= coarse * (1.0 - 1e-12));
    CHECK(fine <= coarse * 1.05);
}
