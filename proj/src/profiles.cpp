#include "vortex/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "vortex/errors.hpp"
#include "vortex/roots.hpp"
#include "vortex/series.hpp"

namespace vortex {
namespace {

// log(1+u)/u, continuous at 0.
double log1p_over(double u) {
    if (std::abs(u) < 1e-6) return 1.0 - u / 2.0 + u * u / 3.0 - u * u * u / 4.0 + u * u * u * u / 5.0;
    return std::log1p(u) / u;
}

// log(1+u)/u - 1/(1+u), continuous at 0.
double log1p_over_minus_recip(double u) {
    if (std::abs(u) < 1e-6) return u / 2.0 - 2.0 * u * u / 3.0 + 3.0 * u * u * u / 4.0 - 4.0 * u * u * u * u / 5.0;
    return std::log1p(u) / u - 1.0 / (1.0 + u);
}

// 16 eps / (64 + eps^4) = -(varpi_0(1+eps/2) - varpi_0(1-eps/2)) / 2
double half_gap(double eps) {
    return 16.0 * eps / (64.0 + eps * eps * eps * eps);
}

double right_constant(double eps) {
    const double a = 1.0 - 0.5 * eps, b = 1.0 + 0.5 * eps;
    return 0.5 * std::log((1.0 + a * a) / (1.0 + b * b)) + half_gap(eps);
}

double c_left(double x, double eps) {
    const double a = 1.0 - 0.5 * eps;
    return half_gap(eps) - 0.5 * log1p_over(a * a * x * x);
}

double c_right(double x, double eps) {
    const double b = 1.0 + 0.5 * eps;
    const double v = b * b * x * x;
    if (v == 0.0) throw DomainError("c_R is singular at x = 0 for eps > 0");
    return -0.5 * log1p_over(v) - right_constant(eps) / v;
}

double c_side(Side side, double x, double eps) {
    return side == Side::left ? c_left(x, eps) : c_right(x, eps);
}

void require_nonnegative(double r, const char* who) {
    if (!(r >= 0.0)) {
        std::ostringstream os;
        os << who << ": negative radius " << r;
        throw DomainError(os.str());
    }
}

}  // namespace

double lambda0() {
    return 0.5 * std::log(2.0);
}

double base_profile(double r) {
    return 1.0 / (1.0 + r * r);
}

double base_profile_derivative(double r) {
    const double d = 1.0 + r * r;
    return -2.0 * r / (d * d);
}

VortexProfile::VortexProfile(double eps) : epsilon(eps) {
    if (!(eps >= 0.0 && eps < 2.0)) throw DomainError("plateau width must lie in [0, 2)");
}

double VortexProfile::jump() const {
    return -2.0 * half_gap(epsilon);
}

double eval_profile(const VortexProfile& p, double r, ProfileKind which) {
    require_nonnegative(r, "eval_profile");
    switch (which) {
        case ProfileKind::base:
            return base_profile(r);
        case ProfileKind::perturbed:
            if (r <= p.inner()) return base_profile(r) + p.jump();
            if (r < p.outer()) return base_profile(p.outer());
            return base_profile(r);
        case ProfileKind::derivative:
            if (p.epsilon > 0.0 && r > p.inner() && r < p.outer()) return 0.0;
            return base_profile_derivative(r);
    }
    return 0.0;
}

double partial_mass(const VortexProfile& p, double r) {
    require_nonnegative(r, "partial_mass");
    const double a = p.inner(), b = p.outer();
    if (r <= a) return 0.5 * std::log1p(r * r) + 0.5 * r * r * p.jump();
    const double inner_mass = 0.5 * std::log1p(a * a);
    if (r < b) return inner_mass + 0.5 * r * r * base_profile(b) - 0.5 * a * a * base_profile(a);
    return inner_mass + 0.5 * (std::log1p(r * r) - std::log1p(b * b)) + 0.5 * b * b * base_profile(b) -
           0.5 * a * a * base_profile(a);
}

double eval_c(const SideCoefficient& s, double x, COrder order) {
    if (!(x >= 0.0)) throw DomainError("eval_c: negative argument");
    const double eps = s.epsilon;
    switch (order) {
        case COrder::value:
            return c_side(s.side, x, eps);
        case COrder::d_x: {
            if (s.side == Side::left) {
                const double a = 1.0 - 0.5 * eps;
                const double u = a * a * x * x;
                return x == 0.0 ? 0.0 : log1p_over_minus_recip(u) / x;
            }
            const double b = 1.0 + 0.5 * eps;
            const double v = b * b * x * x;
            if (v == 0.0) throw DomainError("c_R is singular at x = 0 for eps > 0");
            return log1p_over_minus_recip(v) / x + 2.0 * right_constant(eps) / (b * b * x * x * x);
        }
        case COrder::d_eps: {
            if (eps == 0.0) {
                const double u = x * x;
                if (s.side == Side::left) return 0.25 + 0.5 / (1.0 + u) - 0.5 * log1p_over(u);
                if (u == 0.0) throw DomainError("d_eps c_R is singular at x = 0");
                return -0.25 / u + 0.5 / (u * (1.0 + u)) + 0.5 * log1p_over(u);
            }
            const double h = 1e-5;
            return (c_side(s.side, x, eps + h) - c_side(s.side, x, eps - h)) / (2.0 * h);
        }
        case COrder::d2_eps: {
            const bool inside = s.side == Side::left ? x <= 1.75 : x >= 0.25;
            if (!inside) throw DomainError("second eps-derivative requested outside its validity strip");
            const double h = 1e-4;
            return (c_side(s.side, x, eps + h) - 2.0 * c_side(s.side, x, eps) + c_side(s.side, x, eps - h)) / (h * h);
        }
    }
    return 0.0;
}

double eval_c(const VortexProfile& p, double r, COrder order) {
    require_nonnegative(r, "eval_c");
    if (order == COrder::value) {
        if (r <= p.inner()) return -0.5 * log1p_over(r * r) - 0.5 * p.jump();
        return -partial_mass(p, r) / (r * r);
    }
    if (order == COrder::d_x) {
        // c' = (2P - r^2 varpi) / r^3; on the inner branch the jump cancels.
        if (r <= p.inner()) return r == 0.0 ? 0.0 : log1p_over_minus_recip(r * r) / r;
        return (2.0 * partial_mass(p, r) - r * r * eval_profile(p, r, ProfileKind::perturbed)) / (r * r * r);
    }
    throw DomainError("physical c supports value and d_x only");
}

double limit_gap(double x) {
    constexpr int K = 40;
    static const taylor::Poly coeffs = [] {
        // lambda0 - (log 2 + log(1 + t + t^2/2)) / (2 (1+t)^2)
        taylor::Poly l = taylor::log1p({0.0, 1.0, 0.5}, K);
        l[0] += std::log(2.0);
        taylor::Poly d = taylor::scale(taylor::mul(l, taylor::reciprocal({1.0, 2.0, 1.0}, K), K), -0.5);
        d[0] = 0.0;
        return d;
    }();
    const double t = x - 1.0;
    if (std::abs(t) < 0.25) return taylor::eval(coeffs, t);
    return lambda0() + eval_c({Side::left, 0.0}, x);
}

std::pair<double, double> lambda_bracket(double epsilon, double eps0) {
    if (epsilon == 0.0)
        throw BracketError("empty bracket at eps = 0: the gap degenerates to the single point lambda0");
    if (!(epsilon > 0.0 && epsilon <= eps0)) {
        std::ostringstream os;
        os << "eps = " << epsilon << " outside (0, " << eps0 << "]";
        throw DomainError(os.str());
    }
    return {-c_right(1.0, epsilon), -c_left(1.0, epsilon)};
}

DerivativeSup base_derivative_sup() {
    auto g = [](double r) { return std::abs(base_profile_derivative(r)); };
    const double r = golden_max(g, 0.0, 2.0, 1e-12);
    return {g(r), r};
}

HolderReport holder_distance(double epsilon, double alpha, int grid_resolution) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("Holder exponent must lie in (0, 1)");
    if (!(epsilon > 0.0)) throw DomainError("holder_distance needs eps > 0");
    const VortexProfile p(epsilon);
    const double a = p.inner(), b = p.outer();
    auto diff = [&](double r) {
        return eval_profile(p, r, ProfileKind::base) - eval_profile(p, r, ProfileKind::perturbed);
    };

    // g is constant on [0, a] and zero on [b, inf); pairs reaching further add nothing.
    std::vector<double> grid;
    const int m = std::max(8, grid_resolution / 4);
    for (int i = 0; i <= m; ++i) {
        const double w = std::pow(static_cast<double>(i) / m, 2.0);
        grid.push_back(a - epsilon * w);
        grid.push_back(b + epsilon * w);
        grid.push_back(a + 0.5 * epsilon * w);
        grid.push_back(b - 0.5 * epsilon * w);
    }
    grid.push_back(0.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> g(grid.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        g[i] = diff(grid[i]);
        sup = std::max(sup, std::abs(g[i]));
    }
    double semi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j)
            semi = std::max(semi, std::abs(g[i] - g[j]) / std::pow(grid[j] - grid[i], alpha));
    const double bound = base_derivative_sup().value * std::pow(epsilon, 1.0 - alpha);
    return {sup, semi, sup + semi, bound};
}

}  // namespace vortex
