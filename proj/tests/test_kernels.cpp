#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "vortex/errors.hpp"
#include "vortex/kernels.hpp"
#include "vortex/profiles.hpp"

using namespace vortex;

TEST_CASE("kernel closed form") {
    CHECK(eval_kernel({1}, 0.5) == doctest::Approx(0.5));
    CHECK(eval_kernel({4}, 0.5) == doctest::Approx(0.0625));
    CHECK(eval_kernel({4}, 2.0) == doctest::Approx(1.0 / 64.0));
    CHECK(eval_kernel({3}, 1.0) == 0.5);
    CHECK_THROWS_AS(eval_kernel({0}, 0.5), DomainError);
    CHECK_THROWS_AS(eval_kernel({2}, -0.5), DomainError);
}

TEST_CASE("kernel inversion symmetry K_n(1/r) = r^2 K_n(r)") {
    for (int n = 1; n <= 8; ++n)
        for (double r : {0.05, 0.3, 0.8, 0.999})
            CHECK(eval_kernel({n}, 1.0 / r) == doctest::Approx(r * r * eval_kernel({n}, r)).epsilon(1e-14));
}

TEST_CASE("kernel decay on dyadic sequences for n >= 2") {
    for (int n = 2; n <= 8; ++n) {
        double prev0 = 1.0, prevInf = 1.0;
        for (int k = 4; k <= 40; k += 4) {
            const double small = std::ldexp(1.0, -k), big = std::ldexp(1.0, k);
            const double at0 = std::pow(small, 2 - n) * eval_kernel({n}, small);
            const double atInf = std::pow(big, n) * eval_kernel({n}, big);
            CHECK(at0 <= prev0);
            CHECK(atInf <= prevInf);
            prev0 = at0;
            prevInf = atInf;
        }
        CHECK(prev0 < 1e-11);
        CHECK(prevInf < 1e-11);
    }
}

TEST_CASE("kernel matches the trigonometric integral") {
    // Boost Gauss-Kronrod as a second, independent quadrature of the same integral.
    for (int n = 1; n <= 8; ++n)
        for (double r : {0.1, 0.5, 0.9, 1.1, 2.0, 5.0}) {
            auto f = [&](double b) { return std::sin(b) * std::sin(n * b) / (1.0 + r * r - 2.0 * r * std::cos(b)); };
            const double boost_value =
                boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi, 20, 1e-14) /
                std::numbers::pi;
            CHECK(kernel_trig_oracle({n}, r) == doctest::Approx(eval_kernel({n}, r)).epsilon(1e-10));
            CHECK(boost_value == doctest::Approx(eval_kernel({n}, r)).epsilon(1e-9));
        }
    CHECK_THROWS_AS(kernel_trig_oracle({2}, 1.0), DomainError);
}

TEST_CASE("angular velocity identity") {
    for (double eps : {0.0, 0.1})
        for (double r : {0.2, 0.97, 1.0, 1.03, 3.0}) {
            const AngularVelocityReport rep = angular_velocity_identity(VortexProfile(eps), r);
            CHECK(rep.difference < 1e-10);
            CHECK(rep.closed_form == doctest::Approx(-partial_mass(VortexProfile(eps), r) / (r * r)));
            CHECK(rep.quadrature == doctest::Approx(eval_c(VortexProfile(eps), r)).epsilon(1e-10));
        }
    const AngularVelocityReport base = angular_velocity_identity(VortexProfile(0.0), 1.0);
    CHECK(base.closed_form == doctest::Approx(-lambda0()));
    CHECK_THROWS_AS(angular_velocity_identity(VortexProfile(0.0), 0.0), DomainError);
}
