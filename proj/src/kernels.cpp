#include "vortex/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vortex/errors.hpp"
#include "vortex/quadrature.hpp"

namespace vortex {

double eval_kernel(const KernelSpec& spec, double r) {
    if (spec.n < 1) throw DomainError("kernel index must be >= 1");
    if (!(r > 0.0)) throw DomainError("kernel argument must be positive");
    if (r <= 1.0) return 0.5 * std::pow(r, spec.n - 1);
    return 0.5 * std::pow(r, -spec.n - 1);
}

double kernel_trig_oracle(const KernelSpec& spec, double r, double tol) {
    if (spec.n < 1) throw DomainError("kernel index must be >= 1");
    if (!(r > 0.0) || r == 1.0) throw DomainError("trig oracle needs r > 0, r != 1");
    const int n = spec.n;
    auto f = [&](double b) {
        return std::sin(b) * std::sin(n * b) / (1.0 + r * r - 2.0 * r * std::cos(b));
    };
    QuadratureSpec q;
    q.rel_tol = tol;
    q.abs_tol = 0.1 * tol;  // integrand is O(1) while K_n can be tiny; absolute accuracy is what matters
    q.grading_center = 0.0;
    q.grading_levels = 30;
    // Even integrand: twice the half-period.
    const QuadResult res = adaptive_quad(f, 0.0, std::numbers::pi, q);
    return res.value / std::numbers::pi;
}

AngularVelocityReport angular_velocity_identity(const VortexProfile& p, double r, double tol) {
    if (!(r > 0.0)) throw DomainError("angular_velocity_identity needs r > 0");
    auto f = [&](double s) {
        return eval_profile(p, s, ProfileKind::derivative) * eval_kernel({1}, r / s);
    };
    const double a = p.inner(), b = p.outer();
    QuadratureSpec q;
    q.rel_tol = 1e-13;
    q.abs_tol = 1e-15;
    const double cut = std::max({r, b, 2.0});
    for (double s : {a, b, r})
        if (s < cut) q.split_points.push_back(s);
    double lhs = adaptive_quad(f, 0.0, cut, q).value;
    QuadratureSpec qt = q;
    qt.split_points.clear();
    lhs += semiinfinite_quad(f, cut, qt).value;

    const double rhs = -partial_mass(p, r) / (r * r);
    AngularVelocityReport rep{lhs, rhs, std::abs(lhs - rhs)};
    if (rep.difference > tol) {
        std::ostringstream os;
        os << "angular velocity identity violated at r = " << r << ": " << lhs << " vs " << rhs;
        throw IdentityViolation(os.str());
    }
    return rep;
}

}  // namespace vortex
