#include "vortex/eigensolver.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "vortex/errors.hpp"
#include "vortex/mode_assembly.hpp"
#include "vortex/quadrature.hpp"
#include "vortex/roots.hpp"

namespace vortex {
namespace {

constexpr double kSlopeAt1 = -0.5;  // varpi_0'(1)

double gap_slope() {
    return std::log(2.0) - 0.5;
}

QuadratureSpec graded_at_one(double rel_tol) {
    QuadratureSpec q;
    q.rel_tol = rel_tol;
    q.abs_tol = 1e-15;
    q.grading_center = 1.0;
    q.grading_levels = 45;
    return q;
}

// lambda1 from the value u of log(-mu_L / mu_R).
double lambda1_from_log_ratio(double u) {
    const double p = 0.5 * (1.0 - std::log(2.0)), s = 0.5 * std::log(2.0);
    if (u > 0.0) {
        const double e = std::exp(-u);
        return -(p * e + s) / (e + 1.0);
    }
    const double e = std::exp(u);
    return -(p + e * s) / (1.0 + e);
}

double checked_lambda1(double u, const char* which) {
    const double l1 = lambda1_from_log_ratio(u);
    const auto [lo, hi] = lambda1_window();
    if (!std::isfinite(u) || !(l1 > lo && l1 < hi)) {
        std::ostringstream os;
        os << "lambda1 (" << which << ") left the window: " << l1;
        throw BracketError(os.str());
    }
    return l1;
}

}  // namespace

double compute_I1(const RadialSolution& h_L, double lambda, double epsilon, int n, double rel_tol,
                  const ProfileSlope& slope) {
    const double a = 1.0 - 0.5 * epsilon;
    const SideCoefficient side{Side::left, epsilon};
    if (epsilon > 0.0 && !(lambda + eval_c(side, 1.0) < 0.0))
        throw BracketError("compute_I1: lambda + c_L(1) is not negative");
    auto f = [&](double s) {
        const double d = epsilon == 0.0 ? limit_gap(s) : lambda + eval_c(side, s);
        return slope(s * a) * std::pow(s, n) * h_L.value(s) / d;
    };
    return -a / (2.0 * n) * adaptive_quad(f, 0.0, 1.0, graded_at_one(rel_tol)).value;
}

double compute_I2(const RadialSolution& h_R, double lambda, double epsilon, int n, double rel_tol,
                  const ProfileSlope& slope) {
    const double b = 1.0 + 0.5 * epsilon;
    const SideCoefficient side{Side::right, epsilon};
    if (epsilon > 0.0 && !(lambda + eval_c(side, 1.0) > 0.0))
        throw BracketError("compute_I2: lambda + c_R(1) is not positive");
    auto f = [&](double s) {
        const double d = epsilon == 0.0 ? limit_gap(s) : lambda + eval_c(side, s);
        return slope(s * b) * std::pow(s, -n) * h_R.value(s) / d;
    };
    return -b / (2.0 * n) * semiinfinite_quad(f, 1.0, graded_at_one(rel_tol)).value;
}

double q_factor(double epsilon, int n) {
    return std::pow((1.0 - 0.5 * epsilon) / (1.0 + 0.5 * epsilon), n);
}

double determinant_formula(double I1, double I2, double q) {
    return 1.0 + I1 + I2 + (1.0 - q * q) * I1 * I2;
}

DeterminantEval evaluate_determinant(double lambda, double epsilon, int n, const SolverOptions& opts) {
    DeterminantEval ev{0.0, 0.0, 0.0, integrate_radial(OdeProblem::make(Side::left, n, epsilon, lambda), opts.grid),
                       integrate_radial(OdeProblem::make(Side::right, n, epsilon, lambda), opts.grid)};
    ev.I1 = compute_I1(ev.h_L, lambda, epsilon, n, opts.quad_rel_tol);
    ev.I2 = compute_I2(ev.h_R, lambda, epsilon, n, opts.quad_rel_tol);
    ev.det = determinant_formula(ev.I1, ev.I2, q_factor(epsilon, n));
    return ev;
}

double determinant(double lambda, double epsilon, int n, const SolverOptions& opts) {
    return evaluate_determinant(lambda, epsilon, n, opts).det;
}

std::pair<double, double> normalize_amplitudes(double A, double B) {
    const double m = std::max(std::abs(A), std::abs(B));
    if (m == 0.0) throw DegenerateMatrixError("amplitudes are both zero");
    const double big = std::abs(A) >= std::abs(B) ? A : B;
    const double s = big < 0.0 ? -1.0 / m : 1.0 / m;
    return {A * s, B * s};
}

std::pair<double, double> null_vector(double I1, double I2, double epsilon, int n) {
    const double q = q_factor(epsilon, n);
    const double r1 = std::abs(1.0 + I1) + std::abs(q * I2);
    const double r2 = std::abs(q * I1) + std::abs(1.0 + I2);
    if (r1 == 0.0 && r2 == 0.0) throw DegenerateMatrixError("both matrix rows vanish");
    if (std::abs(1.0 + I1) >= std::abs(1.0 + I2) && r1 > 0.0) return normalize_amplitudes(q * I2, -(1.0 + I1));
    return normalize_amplitudes(1.0 + I2, -q * I1);
}

std::pair<double, double> lambda1_window() {
    return {-0.5 * std::log(2.0), -0.5 * (1.0 - std::log(2.0))};
}

Lambda1Report lambda1_leading(int n, const GridSpec& grid) {
    if (n < 2) throw DomainError("lambda1_leading needs n >= 2");
    const RadialSolution hL = integrate_radial(OdeProblem::limit(Side::left, n), grid);
    const RadialSolution hR = integrate_radial(OdeProblem::limit(Side::right, n), grid);
    const double k = gap_slope(), w1 = kSlopeAt1;
    const QuadratureSpec q = graded_at_one(1e-12);
    auto quad = [&](const Integrand& f, double lo, double hi) { return adaptive_quad(f, lo, hi, q).value; };
    auto tail = [&](const Integrand& f, double lo) { return semiinfinite_quad(f, lo, q).value; };

    Lambda1Report rep;
    auto phiL = [&](double x) { return base_profile_derivative(x) * hL.value(x) * std::pow(x, n); };
    auto phiR = [&](double x) { return base_profile_derivative(x) * hR.value(x) * std::pow(x, -n); };
    rep.C_L = quad([&](double x) { return phiL(x) / limit_gap(x) - w1 / (k * (x - 1.0)); }, 0.0, 1.0);
    rep.C_R = quad([&](double x) { return phiR(x) / limit_gap(x) - w1 / (k * (x - 1.0)); }, 1.0, 2.0) +
              tail([&](double x) { return phiR(x) / limit_gap(x); }, 2.0);

    // Constants in their printed form.
    rep.harmonic = quad([&](double x) { return (std::pow(x, n) - 1.0) / (x - 1.0); }, 0.0, 1.0);
    auto excess = [&](double x) {
        const double d = limit_gap(x);
        return (d - k * (x - 1.0)) / (d * k * (x - 1.0));
    };
    const double T2L = quad([&](double x) { return excess(x) * std::pow(x, n); }, 0.0, 1.0);
    const double T3L = quad([&](double x) { return (hL.value(x) - 1.0) * std::pow(x, n) / limit_gap(x); }, 0.0, 1.0);
    const double zl = w1 * (rep.harmonic / k + T2L) - w1 / k * std::log(k) + w1 * T3L;
    const double R1 = quad([&](double x) { return (std::pow(x, -n) - 1.0) / (k * (x - 1.0)); }, 1.0, 2.0);
    const double R2 = tail([&](double x) { return std::pow(x, -n) / (k * (x - 1.0)); }, 2.0);
    const double R3 = tail([&](double x) { return excess(x) * std::pow(x, -n); }, 1.0);
    const double R4 = tail([&](double x) { return (hR.value(x) - 1.0) * std::pow(x, -n) / limit_gap(x); }, 1.0);
    const double zr = w1 * (R1 + R2 + R3) + w1 / k * std::log(k) + w1 * R4;
    rep.Z_L = zl / (-2.0 * n);
    rep.Z_R = zr / (-2.0 * n);

    // 1 - (1/2n) [(w1/k) u + C_L + C_R] = 0
    rep.derived = checked_lambda1((2.0 * n - rep.C_L - rep.C_R) * k / w1, "derived");
    // 1 - (1/2n)(w1/k) u + Z_L + Z_R = 0
    rep.printed_weighted = checked_lambda1((1.0 + rep.Z_L + rep.Z_R) * 2.0 * n * k / w1, "printed constants, weighted");
    // 1 - (1/2n)(1/k) u + Z_L + Z_R = 0
    rep.as_printed = checked_lambda1((1.0 + rep.Z_L + rep.Z_R) * 2.0 * n * k, "as printed");
    return rep;
}

namespace {

double cached_lambda1(int n, const GridSpec& grid) {
    static std::mutex mu;
    static std::map<int, double> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    const double v = lambda1_leading(n, grid).derived;
    std::lock_guard<std::mutex> lock(mu);
    cache[n] = v;
    return v;
}

}  // namespace

EigenResult solve_lambda(double epsilon, int n, const SolverOptions& opts) {
    if (epsilon == 0.0)
        throw NoEigenvalueError(
            "no periodic mode at eps = 0: the bracket (-c_R(1,0), -c_L(1,0)) collapses to lambda0 and the "
            "strictly monotone profile admits no such solution");
    if (n < 2) throw DomainError("solve_lambda needs n >= 2");
    const auto bracket = lambda_bracket(epsilon, opts.eps0);
    EigenResult res;
    res.n = n;
    res.bracket = bracket;
    if (n < 4) res.warnings.push_back("n < 4: positivity of h_L, h_R is not guaranteed at this order");

    const double w = bracket.second - bracket.first;
    const double lo = bracket.first + opts.margin * w, hi = bracket.second - opts.margin * w;
    auto f = [&](double lam) { return determinant(lam, epsilon, n, opts); };
    const double flo = f(lo), fhi = f(hi);
    if (!(flo * fhi < 0.0)) {
        std::ostringstream os;
        os << "determinant has no sign change inside the bracket for eps = " << epsilon << ", n = " << n << " (" << flo
           << ", " << fhi << ")";
        throw NoEigenvalueError(os.str());
    }
    const RootResult root = brent_root(f, lo, hi, flo, fhi, opts.root_tol, 200);
    res.iterations = root.iterations;

    DeterminantEval ev = evaluate_determinant(root.root, epsilon, n, opts);
    res.det = ev.det;
    res.I1 = ev.I1;
    res.I2 = ev.I2;
    res.q_factor = q_factor(epsilon, n);
    std::tie(res.A, res.B) = null_vector(ev.I1, ev.I2, epsilon, n);
    res.h_L = std::move(ev.h_L);
    res.h_R = std::move(ev.h_R);

    Lambda& L = res.lambda;
    L.total = root.root;
    L.epsilon = epsilon;
    L.lambda0 = lambda0();
    L.lambda1 = (L.total - L.lambda0) / epsilon;
    L.lambda1_ref = cached_lambda1(n, opts.grid);
    const double le = epsilon * std::log(epsilon);
    L.lambda2 = (L.total - L.lambda0 - epsilon * L.lambda1_ref) / (le * le);

    const auto [w_lo, w_hi] = lambda1_window();
    if (!(L.lambda1 > w_lo && L.lambda1 < w_hi)) res.warnings.push_back("fitted lambda1 outside its window");
    if (std::abs(L.lambda2) > opts.lambda2_bound) res.warnings.push_back("fitted |lambda2| exceeds its bound");
    if (opts.verify) res.residuals = verify_integral_equations(res);
    return res;
}

}  // namespace vortex
