#include "vortex/mode_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vortex/errors.hpp"
#include "vortex/kernels.hpp"
#include "vortex/quadrature.hpp"
#include "vortex/roots.hpp"

namespace vortex {
namespace {

QuadratureSpec graded(double center, double rel_tol) {
    QuadratureSpec q;
    q.rel_tol = rel_tol;
    q.abs_tol = 1e-16;
    q.grading_center = center;
    q.grading_levels = 45;
    return q;
}

double gap(Side side, double eps, double lambda, double x) {
    return lambda + eval_c({side, eps}, x);
}

// varpi_0'(s a) h(s) / (lambda + c(s)) for either side.
struct Weights {
    const ModeField& m;
    double gL(double s) const {
        const double a = m.inner();
        return base_profile_derivative(s * a) * m.h_L.value(s) / gap(Side::left, m.epsilon, m.lambda, s);
    }
    double gR(double s) const {
        const double b = m.outer();
        return base_profile_derivative(s * b) * m.h_R.value(s) / gap(Side::right, m.epsilon, m.lambda, s);
    }
};

// int_0^1 gL s^n and int_1^inf gR s^-n
std::pair<double, double> full_moments(const ModeField& m, double tol) {
    const Weights w{m};
    const int n = m.n;
    const double JL = adaptive_quad([&](double s) { return w.gL(s) * std::pow(s, n); }, 0.0, 1.0, graded(1.0, tol)).value;
    const double JR =
        semiinfinite_quad([&](double s) { return w.gR(s) * std::pow(s, -n); }, 1.0, graded(1.0, tol)).value;
    return {JL, JR};
}

std::vector<double> left_collocation(int count, double delta) {
    std::vector<double> xs;
    const int coarse = count / 2;
    for (int i = 0; i < coarse; ++i) xs.push_back(0.02 + (0.9 - 0.02) * i / std::max(1, coarse - 1));
    const int fine = count - coarse;
    for (int i = 1; i <= fine; ++i) xs.push_back(1.0 - 0.1 * std::pow(delta / 0.1, static_cast<double>(i) / fine));
    return xs;
}

std::vector<double> right_collocation(int count, double delta, double extent) {
    std::vector<double> xs;
    const int fine = count / 2;
    for (int i = 0; i < fine; ++i) xs.push_back(1.0 + delta * std::pow(0.1 / delta, static_cast<double>(i) / fine));
    const int coarse = count - fine;
    for (int i = 0; i < coarse; ++i)
        xs.push_back(1.1 * std::pow(extent / 1.1, static_cast<double>(i) / std::max(1, coarse - 1)));
    return xs;
}

}  // namespace

double ModeField::f_star_L(double x) const {
    if (x == 0.0) return 0.0;
    return H_L(x) / (2.0 * n * x * inner() * gap(Side::left, epsilon, lambda, x));
}

double ModeField::f_star_R(double x) const {
    return H_R(x) / (2.0 * n * x * outer() * gap(Side::right, epsilon, lambda, x));
}

double ModeField::h_n(double r) const {
    if (r < 0.0) throw DomainError("h_n: negative radius");
    if (r <= inner()) return f_star_L(r / inner());
    if (r >= outer()) return f_star_R(r / outer());
    return 0.0;
}

double ModeField::W_n(double r) const {
    if (r > inner() && r < outer()) return 0.0;
    return h_n(r) * eval_profile(VortexProfile(epsilon), r, ProfileKind::derivative);
}

double ModeField::field(double r, double theta, double t) const {
    return W_n(r) * std::cos(n * (theta - lambda * t));
}

ModeField make_mode(double epsilon, int n, double lambda, double A, double B, RadialSolution h_L, RadialSolution h_R,
                    double floor) {
    if (n < 2) throw AssemblyError("mode index n must be >= 2");
    const double dl = gap(Side::left, epsilon, lambda, 1.0), dr = gap(Side::right, epsilon, lambda, 1.0);
    if (!(dl < -floor) || !(dr > floor)) {
        std::ostringstream os;
        os << "lambda + c too close to zero on the support: " << dl << ", " << dr;
        throw AssemblyError(os.str());
    }
    ModeField m;
    m.epsilon = epsilon;
    m.n = n;
    m.lambda = lambda;
    m.A = A;
    m.B = B;
    m.h_L = std::move(h_L);
    m.h_R = std::move(h_R);
    return m;
}

ModeField assemble_mode(const EigenResult& e) {
    return make_mode(e.lambda.epsilon, e.n, e.lambda.total, e.A, e.B, e.h_L, e.h_R);
}

double left_residual(const ModeField& m, double x, double tol) {
    const Weights w{m};
    const int n = m.n;
    const double a = m.inner(), b = m.outer(), q = q_factor(m.epsilon, n);
    const double below =
        adaptive_quad([&](double s) { return w.gL(s) * std::pow(s / x, n); }, 0.0, x, graded(x, tol)).value;
    const double above =
        adaptive_quad([&](double s) { return w.gL(s) * std::pow(s / x, -n); }, x, 1.0, graded(1.0, tol)).value;
    const double outer =
        semiinfinite_quad([&](double s) { return w.gR(s) * std::pow(s / x, -n); }, 1.0, graded(1.0, tol)).value;
    return m.H_L(x) - a / (2.0 * n) * m.A * (below + above) - b / (2.0 * n) * q * m.B * outer;
}

double right_residual(const ModeField& m, double x, double tol) {
    const Weights w{m};
    const int n = m.n;
    const double a = m.inner(), b = m.outer(), q = q_factor(m.epsilon, n);
    const double inner =
        adaptive_quad([&](double s) { return w.gL(s) * std::pow(s / x, n); }, 0.0, 1.0, graded(1.0, tol)).value;
    const double below =
        adaptive_quad([&](double s) { return w.gR(s) * std::pow(s / x, n); }, 1.0, x, graded(1.0, tol)).value;
    const double above =
        semiinfinite_quad([&](double s) { return w.gR(s) * std::pow(s / x, -n); }, x, graded(x, tol)).value;
    return m.H_R(x) - a / (2.0 * n) * q * m.A * inner - b / (2.0 * n) * m.B * (below + above);
}

double physical_residual(const ModeField& m, double r, double tol) {
    const VortexProfile p(m.epsilon);
    const double a = p.inner(), b = p.outer();
    const KernelSpec K{m.n};
    auto f = [&](double s) { return eval_kernel(K, r / s) * m.W_n(s); };
    double integral = 0.0;
    if (r < a) {
        integral += adaptive_quad(f, 0.0, r, graded(r, tol)).value;
        integral += adaptive_quad(f, r, a, graded(a, tol)).value;
    } else {
        integral += adaptive_quad(f, 0.0, a, graded(a, tol)).value;
    }
    if (r > b) {
        integral += adaptive_quad(f, b, r, graded(b, tol)).value;
        integral += semiinfinite_quad(f, r, graded(r, tol)).value;
    } else {
        integral += semiinfinite_quad(f, b, graded(b, tol)).value;
    }
    const double slope = eval_profile(p, r, ProfileKind::derivative);
    return (m.lambda + eval_c(p, r)) * m.W_n(r) - slope * integral / m.n;
}

ResidualReport verify_integral_equations(const ModeField& m, const CollocationSpec& spec) {
    ResidualReport rep;
    const double delta = std::max(1e-4, m.epsilon / 20.0);
    rep.left_points = left_collocation(spec.left_points, delta);
    rep.right_points = right_collocation(spec.right_points, delta, spec.right_extent);
    if (m.A == 0.0 && m.B == 0.0) {
        rep.trivial = true;
        return rep;
    }

    for (double x : rep.left_points) rep.scale = std::max(rep.scale, std::abs(m.H_L(x)));
    for (double x : rep.right_points) rep.scale = std::max(rep.scale, std::abs(m.H_R(x)));
    for (double x : rep.left_points)
        rep.left = std::max(rep.left, std::abs(left_residual(m, x, spec.rel_tol)) / rep.scale);
    for (double x : rep.right_points)
        rep.right = std::max(rep.right, std::abs(right_residual(m, x, spec.rel_tol)) / rep.scale);

    const auto [JL, JR] = full_moments(m, spec.rel_tol);
    const double I1 = -m.inner() / (2.0 * m.n) * JL, I2 = -m.outer() / (2.0 * m.n) * JR;
    const double q = q_factor(m.epsilon, m.n);
    rep.N_L_at_1 = (m.A * (1.0 + I1) + m.B * q * I2) / rep.scale;
    rep.N_R_at_1 = (m.B * (1.0 + I2) + m.A * q * I1) / rep.scale;

    // Physical radii: half on each support component, kept off the plateau edges.
    const double a = m.inner(), b = m.outer();
    const int half = spec.physical_radii / 2;
    for (int i = 0; i < half; ++i) rep.physical_radii.push_back(a * rep.left_points[i * rep.left_points.size() / half]);
    for (int i = 0; i < spec.physical_radii - half; ++i)
        rep.physical_radii.push_back(
            b * rep.right_points[i * rep.right_points.size() / (spec.physical_radii - half)]);
    std::vector<double> res(rep.physical_radii.size());
    double norm = 0.0;
    const VortexProfile p(m.epsilon);
    for (std::size_t i = 0; i < rep.physical_radii.size(); ++i) {
        const double r = rep.physical_radii[i];
        res[i] = physical_residual(m, r, spec.rel_tol);
        norm = std::max(norm, std::abs((m.lambda + eval_c(p, r)) * m.W_n(r)));
    }
    for (double v : res) rep.physical = std::max(rep.physical, std::abs(v) / norm);

    // Same residual through the rescaled equations: R_W(r) = varpi'(r) N(r/a) / (2 n r).
    const std::size_t stride = std::max<std::size_t>(1, rep.physical_radii.size() / spec.shared_radii);
    for (std::size_t i = 0; i < rep.physical_radii.size(); i += stride) {
        const double r = rep.physical_radii[i];
        const double N = r <= a ? left_residual(m, r / a, spec.rel_tol) : right_residual(m, r / b, spec.rel_tol);
        const double via = eval_profile(p, r, ProfileKind::derivative) * N / (2.0 * m.n * r);
        rep.jacobian_mismatch = std::max(rep.jacobian_mismatch, std::abs(via - res[i]) / norm);
    }
    return rep;
}

ResidualReport verify_integral_equations(const EigenResult& e, const CollocationSpec& spec) {
    return verify_integral_equations(assemble_mode(e), spec);
}

std::vector<ScalingRow> difference_scaling_table(int n, const std::vector<std::pair<double, double>>& solved,
                                                 const GridSpec& grid) {
    const RadialSolution hL0 = integrate_radial(OdeProblem::limit(Side::left, n), grid);
    const RadialSolution hR0 = integrate_radial(OdeProblem::limit(Side::right, n), grid);
    std::vector<double> xs;
    for (int i = 0; i <= 300; ++i) xs.push_back(std::pow(10.0, -3.0 + 3.0 * i / 300.0));
    std::vector<ScalingRow> rows;
    for (const auto& [eps, lam] : solved) {
        const RadialSolution hL = integrate_radial(OdeProblem::make(Side::left, n, eps, lam), grid);
        const RadialSolution hR = integrate_radial(OdeProblem::make(Side::right, n, eps, lam), grid);
        ScalingRow row;
        row.epsilon = eps;
        row.lambda = lam;
        for (double x : xs) {
            row.left_norm = std::max(row.left_norm, std::pow(x, -n) * std::abs(hL.value(x) - hL0.value(x)));
            const double X = 1.0 / x;
            row.right_norm = std::max(row.right_norm, std::pow(X, n) * std::abs(hR.value(X) - hR0.value(X)));
        }
        const double s = eps * std::log(1.0 / eps);
        row.left_ratio = row.left_norm / s;
        row.right_ratio = row.right_norm / s;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScalingRow> difference_scaling_study(int n, const std::vector<double>& eps_list,
                                                 const SolverOptions& opts) {
    if (!std::is_sorted(eps_list.rbegin(), eps_list.rend()))
        throw DomainError("difference_scaling_study: eps list must be decreasing");
    SolverOptions o = opts;
    o.verify = false;
    std::vector<std::pair<double, double>> solved;
    for (double eps : eps_list) solved.emplace_back(eps, solve_lambda(eps, n, o).lambda.total);
    return difference_scaling_table(n, solved, opts.grid);
}

double plateau_crossing(double epsilon, double lambda) {
    const VortexProfile p(epsilon);
    auto f = [&](double r) { return lambda + eval_c(p, r); };
    return brent_root(f, p.inner(), p.outer(), 1e-14).root;
}

std::vector<Dataset> figure_data(FigureKind kind, const FigureParams& P) {
    const VortexProfile p(P.epsilon);
    std::vector<Dataset> out;
    auto radius = [&](int i) { return P.r_min + (P.r_max - P.r_min) * i / (P.samples - 1); };
    switch (kind) {
        case FigureKind::profiles: {
            Dataset d{"profiles", {"r", "varpi0", "varpi_eps"}, {}, {{"epsilon", P.epsilon}}};
            for (int i = 0; i < P.samples; ++i) {
                const double r = radius(i);
                d.rows.push_back({r, eval_profile(p, r, ProfileKind::base), eval_profile(p, r, ProfileKind::perturbed)});
            }
            out.push_back(std::move(d));
            break;
        }
        case FigureKind::c_gap: {
            const auto [lo, hi] = lambda_bracket(P.epsilon, std::max(P.epsilon, kDefaultEps0));
            const double lam = P.lambda != 0.0 ? P.lambda : 0.5 * (lo + hi);
            Dataset d{"c_gap",
                      {"r", "c", "branch"},
                      {},
                      {{"epsilon", P.epsilon},
                       {"gap_lower", lo},
                       {"gap_upper", hi},
                       {"lambda_star", lam},
                       {"r_star", plateau_crossing(P.epsilon, lam)}}};
            for (int i = 0; i < P.samples; ++i) {
                const double r = radius(i);
                if (r <= 0.0 || (r > p.inner() && r < p.outer())) continue;
                d.rows.push_back({r, eval_c(p, r), r <= p.inner() ? 0.0 : 1.0});
            }
            out.push_back(std::move(d));
            break;
        }
        case FigureKind::mode: {
            if (!P.mode) throw DomainError("figure_data(mode) needs an assembled mode");
            const ModeField& m = *P.mode;
            Dataset radial{"mode", {"r", "W_n"}, {}, {{"epsilon", m.epsilon}, {"n", m.n}, {"lambda", m.lambda}}};
            Dataset heat{"mode_heatmap", {"r", "theta", "value"}, {}, radial.meta};
            for (int i = 0; i < P.samples; ++i) {
                const double r = radius(i);
                if (r <= 0.0) continue;
                const double w = m.W_n(r);
                radial.rows.push_back({r, w});
            }
            const int nr = std::max(2, P.samples / 4);
            for (int i = 0; i < nr; ++i) {
                const double r = P.r_min + (P.r_max - P.r_min) * (i + 0.5) / nr;
                const double w = m.W_n(r);
                for (int j = 0; j < P.theta_samples; ++j) {
                    const double th = 2.0 * std::numbers::pi * j / P.theta_samples;
                    heat.rows.push_back({r, th, w * std::cos(m.n * th)});
                }
            }
            out.push_back(std::move(radial));
            out.push_back(std::move(heat));
            break;
        }
    }
    return out;
}

}  // namespace vortex
