#include "vortex/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "vortex/errors.hpp"

namespace vortex {

using State = std::array<double, 2>;

struct Trajectory {
    int n = 0;
    std::function<double(double)> G;
    std::vector<double> xi;  // in integration order
    std::vector<State> y;
    bool forward = true;

    void operator()(const State& s, State& ds, double x) const {
        ds[0] = s[1];
        ds[1] = -s[1] / x + (n * n / (x * x) + G(x)) * s[0];
    }

    State at(double x) const;
};

namespace {

namespace odeint = boost::numeric::odeint;
using Stepper = odeint::runge_kutta_fehlberg78<State>;

struct System {
    const Trajectory* t;
    void operator()(const State& s, State& ds, double x) const { (*t)(s, ds, x); }
};

void integrate(Trajectory& traj, double from, State y, double to, double rtol, double atol) {
    traj.forward = to > from;
    traj.xi = {from};
    traj.y = {y};
    auto stepper = odeint::make_controlled(atol, rtol, Stepper());
    const double dir = traj.forward ? 1.0 : -1.0;
    double t = from;
    double dt = dir * 1e-2 * std::max(std::abs(from), 1e-3);
    const System sys{&traj};
    int fails = 0;
    while (dir * (to - t) > 0.0) {
        if (dir * (t + dt - to) > 0.0) dt = to - t;
        const double target = t + dt;
        if (stepper.try_step(sys, y, t, dt) == odeint::success) {
            if (target == to) t = to;
            traj.xi.push_back(t);
            traj.y.push_back(y);
            fails = 0;
        } else if (++fails > 200 || std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "ODE step size underflow at xi = " << t;
            throw ConvergenceError(os.str());
        }
        if (traj.xi.size() > 200000) throw ConvergenceError("ODE integration exceeded step budget");
    }
}

double gap_term(double eps) {
    return 16.0 * eps / (64.0 + eps * eps * eps * eps);
}

SeriesAtPoint left_coefficient_series(double eps, double lambda, int order) {
    const double a = 1.0 - 0.5 * eps, a2 = a * a;
    taylor::Poly q(order + 1, 0.0);  // log(1+u)/u with u = a^2 x^2
    double p = 1.0;
    for (int m = 0; 2 * m <= order; ++m, p *= -a2) q[2 * m] = p / (m + 1);
    taylor::Poly D = taylor::scale(q, -0.5);
    D[0] += lambda + gap_term(eps);
    const taylor::Poly one_u{1.0, 0.0, a2};
    const taylor::Poly N = taylor::scale(taylor::reciprocal(taylor::mul(one_u, one_u, order), order), 2.0 * a2);
    return taylor::to_series(taylor::mul(N, taylor::reciprocal(D, order), order), 0.0,
                             std::numeric_limits<double>::infinity());
}

SeriesAtPoint right_coefficient_series(double eps, double lambda, int order) {
    const double b = 1.0 + 0.5 * eps, b2 = b * b;
    // c_R(1/z) = -(z^2/b^2) [C0 + log b + log(1 + z^2/b^2)/2 - log z]
    const double C0 = -b2 * eval_c({Side::right, eps}, 1.0) - 0.5 * std::log1p(b2);
    taylor::Poly l(order + 1, 0.0);  // log(1 + z^2/b^2)
    double p = 1.0 / b2;
    for (int m = 1; 2 * m <= order; ++m, p *= -1.0 / b2) l[2 * m] = p / m;
    SeriesAtPoint D;
    D.coeffs.assign(order + 1, {0.0});
    D.coeffs[0] = {lambda};
    for (int k = 2; k <= order; ++k) {
        const double alpha = (k == 2 ? -(C0 + std::log(b)) : -0.5 * l[k - 2]) / b2;
        D.coeffs[k][0] = alpha;
    }
    if (order >= 2) D.coeffs[2] = {D.coeffs[2][0], 1.0 / b2};
    const taylor::Poly one_u{1.0, 0.0, 1.0 / b2};
    const taylor::Poly N = taylor::scale(taylor::reciprocal(taylor::mul(one_u, one_u, order), order), 2.0 / b2);
    SeriesAtPoint G = series_multiply(taylor::to_series(N, 0.0, D.radius), series_reciprocal(D));
    return G;
}

void require_finite(const SeriesAtPoint& s, const char* what) {
    for (const auto& row : s.coeffs)
        for (double c : row)
            if (!std::isfinite(c)) throw DomainError(std::string("non-finite series coefficient: ") + what);
}

void probe_denominator(const OdeProblem& p) {
    for (int i = 0; i <= 200; ++i) {
        const double xi = std::max(1e-6, i / 200.0);
        const double x = p.side == Side::left ? xi : 1.0 / xi;
        const double d = p.denominator(x);
        const bool ok = p.side == Side::left ? d < 0.0 : d > 0.0;
        if (!ok) {
            std::ostringstream os;
            os << "denominator lambda + c has the wrong sign at x = " << x << " (" << d << "), lambda = " << p.lambda;
            throw BracketError(os.str());
        }
    }
}

taylor::Poly shift_down(const taylor::Poly& p) {
    return taylor::Poly(p.begin() + 1, p.end());
}

double at(const taylor::Poly& p, int m) {
    return m >= 0 && m < static_cast<int>(p.size()) ? p[m] : 0.0;
}

std::vector<double> sample_xi(double lo, double hi_gap, int samples) {
    // Geometric toward xi = lo and toward xi = 1 (stopping hi_gap short of it).
    std::vector<double> xs;
    const int half = std::max(2, samples / 2);
    for (int i = 0; i < half; ++i) xs.push_back(lo * std::pow(0.5 / lo, static_cast<double>(i) / half));
    const double g0 = 0.5, g1 = std::max(hi_gap, 1e-6);
    for (int i = 0; i < samples - half; ++i)
        xs.push_back(1.0 - g0 * std::pow(g1 / g0, static_cast<double>(i) / (samples - half - 1)));
    if (hi_gap == 0.0) xs.back() = 1.0;
    return xs;
}

}  // namespace

State Trajectory::at(double x) const {
    const double lo = std::min(xi.front(), xi.back()), hi = std::max(xi.front(), xi.back());
    if (x < lo - 1e-14 || x > hi + 1e-14) {
        std::ostringstream os;
        os << "trajectory evaluated at " << x << " outside [" << lo << ", " << hi << "]";
        throw DomainError(os.str());
    }
    std::size_t i;
    if (forward) {
        auto it = std::upper_bound(xi.begin(), xi.end(), x);
        i = it == xi.begin() ? 0 : static_cast<std::size_t>(it - xi.begin()) - 1;
    } else {
        auto it = std::upper_bound(xi.begin(), xi.end(), x, std::greater<double>());
        i = it == xi.begin() ? 0 : static_cast<std::size_t>(it - xi.begin()) - 1;
    }
    State s = y[i];
    const double dt = x - xi[i];
    if (dt == 0.0) return s;
    Stepper rk;
    rk.do_step(System{this}, s, xi[i], dt);
    return s;
}

OdeProblem OdeProblem::make(Side side, int n, double epsilon, double lambda) {
    if (n < 2) throw DomainError("wavenumber must be >= 2");
    if (!(epsilon >= 0.0)) throw DomainError("eps must be nonnegative");
    OdeProblem p;
    p.side = side;
    p.n = n;
    p.epsilon = epsilon;
    p.lambda = epsilon == 0.0 ? lambda0() : lambda;
    p.singular_endpoint = epsilon == 0.0;
    const double eps = epsilon, lam = p.lambda;
    if (side == Side::left) {
        p.coefficient = [eps, lam](double x) {
            const double a = 1.0 - 0.5 * eps, u = a * a * x * x;
            const double d = eps == 0.0 ? limit_gap(x) : lam + eval_c({Side::left, eps}, x);
            return 2.0 * a * a / ((1.0 + u) * (1.0 + u) * d);
        };
        p.coefficient_series = [eps, lam](int order) { return left_coefficient_series(eps, lam, order); };
    } else {
        p.coefficient = [eps, lam](double z) {
            const double b = 1.0 + 0.5 * eps, s = z * z + b * b;
            if (z == 0.0) return 2.0 / (b * b * lam);
            const double d = eps == 0.0 ? limit_gap(1.0 / z) : lam + eval_c({Side::right, eps}, 1.0 / z);
            return 2.0 * b * b / (s * s * d);
        };
        p.coefficient_series = [eps, lam](int order) { return right_coefficient_series(eps, lam, order); };
    }
    return p;
}

OdeProblem OdeProblem::limit(Side side, int n) {
    return make(side, n, 0.0, lambda0());
}

double OdeProblem::potential(double x) const {
    const double xi = side == Side::left ? x : 1.0 / x;
    return xi * xi * coefficient(xi);
}

double OdeProblem::denominator(double x) const {
    return epsilon == 0.0 ? limit_gap(x) : lambda + eval_c({side, epsilon}, x);
}

SeriesAtPoint frobenius_origin_series(const OdeProblem& problem, int order) {
    const SeriesAtPoint G = problem.coefficient_series(order);
    require_finite(G, "coefficient near 0");
    const int n = problem.n;
    SeriesAtPoint h;
    h.center = 0.0;
    h.leading = n;
    h.radius = G.radius;
    h.coeffs.assign(order + 1, {0.0});
    h.coeffs[0] = {1.0};
    for (int k = 1; k <= order; ++k) {
        std::vector<double> r{0.0};
        for (int i = 0; i <= k - 2; ++i) {
            const auto& g = G.coeffs[i];
            const auto& a = h.coeffs[k - 2 - i];
            if (r.size() < g.size() + a.size() - 1) r.resize(g.size() + a.size() - 1, 0.0);
            for (std::size_t p = 0; p < g.size(); ++p)
                for (std::size_t q = 0; q < a.size(); ++q) r[p + q] += g[p] * a[q];
        }
        // (theta^2 - n^2) z^{n+k} L^j = k(2n+k) z^{n+k} L^j + 2(n+k) j z^{n+k} L^{j-1} + j(j-1) z^{n+k} L^{j-2}
        const int J = static_cast<int>(r.size()) - 1;
        std::vector<double> c(J + 3, 0.0);
        for (int j = J; j >= 0; --j)
            c[j] = (r[j] - 2.0 * (n + k) * (j + 1) * c[j + 1] - (j + 2.0) * (j + 1.0) * c[j + 2]) /
                   (static_cast<double>(k) * (2 * n + k));
        c.resize(J + 1);
        h.coeffs[k] = c;
    }
    require_finite(h, "origin series");
    return h;
}

EndpointBasis endpoint_basis(Side side, int n, int order, double radius) {
    const int K = order + 2;
    using taylor::Poly;
    const Poly xi2{1.0, 2.0, 1.0}, xi1{1.0, 1.0};
    const Poly w{0.0, 1.0, 0.5};  // 1 + xi^2 = 2 (1 + w)
    Poly log_term = taylor::log1p(w, K);
    log_term[0] += std::log(2.0);
    const Poly onew{1.0, 1.0, 0.5};
    const Poly N = taylor::scale(taylor::mul(xi2, taylor::reciprocal(taylor::mul(onew, onew, K), K), K), 0.5);
    Poly D;
    if (side == Side::left) {
        D = taylor::scale(taylor::mul(log_term, taylor::reciprocal(xi2, K), K), -0.5);
    } else {
        const Poly inner = taylor::add(log_term, taylor::scale(taylor::log1p(Poly{0.0, 1.0}, K), -2.0));
        D = taylor::scale(taylor::mul(xi2, inner, K), -0.5);
    }
    D[0] = 0.0;  // lambda0 + c(1, 0) vanishes exactly
    const Poly A = shift_down(taylor::mul(xi2, D, K));
    const Poly B = shift_down(taylor::mul(xi1, D, K));
    const Poly C = taylor::scale(taylor::add(taylor::scale(D, n * n), N), -1.0);
    const double A0 = A[0];

    std::vector<double> g(order + 1, 0.0);
    g[1] = 1.0;
    for (int s = 1; s + 1 <= order; ++s) {
        double acc = 0.0;
        for (int k = 1; k <= s; ++k) acc += (at(A, s + 1 - k) * k * (k - 1) + at(B, s - k) * k + at(C, s - k)) * g[k];
        g[s + 1] = -acc / (A0 * s * (s + 1));
    }
    const double beta = -C[0] / A0;
    std::vector<double> e(order + 1, 0.0);
    e[0] = 1.0;
    for (int s = 1; s + 1 <= order; ++s) {
        double R = 0.0;
        for (int k = 1; k <= s + 1; ++k) R += at(A, s + 1 - k) * (2 * k - 1) * g[k];
        for (int k = 1; k <= s; ++k) R += at(B, s - k) * g[k];
        double acc = beta * R;
        for (int k = 0; k <= s; ++k) acc += (at(A, s + 1 - k) * k * (k - 1) + at(B, s - k) * k + at(C, s - k)) * e[k];
        e[s + 1] = -acc / (A0 * s * (s + 1));
    }
    EndpointBasis basis;
    basis.log_coefficient = beta;
    basis.g1.center = basis.g2.center = 1.0;
    basis.g1.radius = basis.g2.radius = radius;
    for (int k = 0; k <= order; ++k) {
        basis.g1.coeffs.push_back({g[k]});
        basis.g2.coeffs.push_back(g[k] != 0.0 ? std::vector<double>{e[k], beta * g[k]} : std::vector<double>{e[k]});
    }
    require_finite(basis.g1, "endpoint basis");
    require_finite(basis.g2, "endpoint basis");
    return basis;
}

RadialSolution integrate_radial(const OdeProblem& problem, const GridSpec& spec) {
    if (!problem.singular_endpoint && problem.epsilon > 0.0) probe_denominator(problem);
    RadialSolution sol;
    sol.problem = problem;
    sol.origin_series = frobenius_origin_series(problem, spec.series_order);
    const double xi0 = spec.start_offset;
    const double hs = sol.origin_series.eval(xi0);
    const double dhs = sol.origin_series.derivative(xi0);
    if (!(hs > 0.0)) throw NormalizationError("origin series is not positive at the start offset");

    auto traj = std::make_shared<Trajectory>();
    traj->n = problem.n;
    traj->G = problem.coefficient;
    const double end = problem.singular_endpoint ? spec.match_point : 1.0;
    integrate(*traj, xi0, State{1.0, dhs / hs}, end, spec.rel_tol, spec.abs_tol);
    sol.traj_ = traj;
    sol.xi0_ = xi0;
    sol.origin_scale_ = 1.0 / hs;
    sol.xi_lo_ = 0.0;
    sol.xi_hi_ = 1.0;

    const double probe = 2.0 * xi0;
    const double from_series = sol.origin_series.eval(probe) / hs;
    sol.handoff_error = std::abs(traj->at(probe)[0] - from_series) / std::abs(from_series);

    double h1;
    if (problem.singular_endpoint) {
        EndpointBasis basis = endpoint_basis(problem.side, problem.n, spec.series_order, spec.series_radius);
        const double xm = spec.match_point;
        const State s = traj->at(xm);
        const double a11 = basis.g1.eval(xm), a12 = basis.g2.eval(xm);
        const double a21 = basis.g1.derivative(xm), a22 = basis.g2.derivative(xm);
        const double det = a11 * a22 - a12 * a21;
        sol.c1_ = (s[0] * a22 - a12 * s[1]) / det;
        sol.c2_ = (a11 * s[1] - a21 * s[0]) / det;
        const double tail = std::max(basis.g1.tail(xm), basis.g2.tail(xm));
        if (tail > 1e-13) {
            std::ostringstream os;
            os << "endpoint series not converged at the match point (tail " << tail << ")";
            throw ConvergenceError(os.str());
        }
        sol.basis_ = std::move(basis);
        sol.basis_from_ = xm;
        h1 = sol.c2_;  // g1(1) = 0, g2(1) = 1
    } else {
        h1 = traj->at(1.0)[0];
    }
    double peak = 0.0;
    for (const auto& y : traj->y) peak = std::max(peak, std::abs(y[0]));
    if (!(std::abs(h1) > 1e-14 * peak)) {
        std::ostringstream os;
        os << "value at x = 1 vanishes (" << h1 << "); n = " << problem.n << " may be too small";
        throw NormalizationError(os.str());
    }
    sol.endpoint_value_at_1 = h1 * hs;
    sol.scale_ = 1.0 / h1;
    sol.fill_samples(spec.samples);
    return sol;
}

RadialSolution second_solution(Side side, int n, const GridSpec& spec) {
    RadialSolution sol;
    sol.problem = OdeProblem::limit(side, n);
    EndpointBasis basis = endpoint_basis(side, n, spec.series_order, spec.series_radius);
    const double xm = spec.match_point;
    auto traj = std::make_shared<Trajectory>();
    traj->n = n;
    traj->G = sol.problem.coefficient;
    integrate(*traj, xm, State{basis.g1.eval(xm), basis.g1.derivative(xm)}, spec.xi_min, spec.rel_tol, spec.abs_tol);
    sol.traj_ = traj;
    sol.xi0_ = 0.0;
    sol.c1_ = 1.0;
    sol.c2_ = 0.0;
    sol.basis_ = std::move(basis);
    sol.basis_from_ = xm;
    sol.scale_ = 1.0;
    sol.xi_lo_ = spec.xi_min;
    sol.xi_hi_ = 1.0;
    sol.fill_samples(spec.samples);
    return sol;
}

std::array<double, 2> RadialSolution::eval_xi(double xi) const {
    if (xi < xi_lo_ - 1e-15 || xi > xi_hi_ + 1e-15) {
        std::ostringstream os;
        os << "solution evaluated at xi = " << xi << " outside [" << xi_lo_ << ", " << xi_hi_ << "]";
        throw DomainError(os.str());
    }
    if (basis_ && xi >= basis_from_) {
        double v = c1_ * basis_->g1.eval(xi), d = c1_ * basis_->g1.derivative(xi);
        if (c2_ != 0.0) {
            v += c2_ * basis_->g2.eval(xi);
            d = xi == 1.0 ? std::numeric_limits<double>::infinity() : d + c2_ * basis_->g2.derivative(xi);
        }
        return {v * scale_, d * scale_};
    }
    if (xi <= xi0_) {
        const double s = origin_scale_ * scale_;
        return {origin_series.eval(xi) * s, origin_series.derivative(xi) * s};
    }
    const State st = traj_->at(xi);
    return {st[0] * scale_, st[1] * scale_};
}

std::array<double, 2> RadialSolution::eval(double x) const {
    if (problem.side == Side::left) return eval_xi(x);
    if (!(x > 0.0)) throw DomainError("right solution needs x > 0");
    const double xi = 1.0 / x;
    const auto r = eval_xi(xi);
    return {r[0], -xi * xi * r[1]};
}

double RadialSolution::value(double x) const {
    return eval(x)[0];
}

double RadialSolution::derivative(double x) const {
    return eval(x)[1];
}

double RadialSolution::x_lo() const {
    return problem.side == Side::left ? xi_lo_ : 1.0 / xi_hi_;
}

double RadialSolution::x_hi() const {
    if (problem.side == Side::left) return xi_hi_;
    return xi_lo_ > 0.0 ? 1.0 / xi_lo_ : std::numeric_limits<double>::infinity();
}

void RadialSolution::fill_samples(int samples) {
    const bool log_at_one = basis_ && c2_ != 0.0;
    const double lo = std::max(xi_lo_, 1e-3);
    std::vector<double> xs = sample_xi(lo, log_at_one ? 1e-9 : 0.0, samples);
    if (problem.side == Side::right) {
        std::reverse(xs.begin(), xs.end());
        for (double& x : xs) x = 1.0 / x;
    }
    grid.clear();
    values.clear();
    derivatives.clear();
    min_value = std::numeric_limits<double>::infinity();
    for (double x : xs) {
        const auto v = eval(x);
        grid.push_back(x);
        values.push_back(v[0]);
        derivatives.push_back(v[1]);
        min_value = std::min(min_value, v[0]);
    }
}

WronskianReport wronskian_report(const RadialSolution& a, const RadialSolution& b, double lo, double hi, int samples) {
    const double dlo = std::max(a.x_lo(), b.x_lo()), dhi = std::min(a.x_hi(), b.x_hi());
    if (!(dlo < dhi) || lo < dlo || hi > dhi || !(lo < hi))
        throw DomainError("wronskian_report: solutions do not share the requested range");
    std::vector<double> xs(samples);
    for (int i = 0; i < samples; ++i) xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (samples - 1));
    std::vector<double> w(samples);
    for (int i = 0; i < samples; ++i) {
        const auto u = a.eval(xs[i]), v = b.eval(xs[i]);
        w[i] = xs[i] * (u[0] * v[1] - u[1] * v[0]);
    }
    // Orientation fixed by the sample closest to x = 1.
    std::size_t near = 0;
    for (int i = 0; i < samples; ++i)
        if (std::abs(xs[i] - 1.0) < std::abs(xs[near] - 1.0)) near = i;
    const double sign = w[near] < 0.0 ? -1.0 : 1.0;
    WronskianReport rep{0.0, std::numeric_limits<double>::infinity(), false};
    double scale = 0.0;
    for (int i = 0; i < samples; ++i) {
        rep.max_deviation = std::max(rep.max_deviation, std::abs(sign * w[i] - 1.0));
        rep.min_abs = std::min(rep.min_abs, std::abs(w[i]));
        const auto u = a.eval(xs[i]), v = b.eval(xs[i]);
        scale = std::max(scale, std::abs(xs[i] * u[0] * v[1]) + std::abs(xs[i] * u[1] * v[0]));
    }
    double peak = 0.0;
    for (double x : w) peak = std::max(peak, std::abs(x));
    rep.dependent = peak <= 1e-12 * std::max(scale, 1e-300);
    return rep;
}

namespace {

constexpr int kPicardNodes = 20;

struct PanelRule {
    std::array<double, kPicardNodes> t;  // nodes on [-1, 1], increasing
    std::array<double, kPicardNodes> w;
    std::array<double, kPicardNodes> bary;
    // S[i][j] = integral over [-1, t_i] of the j-th Lagrange basis polynomial
    std::array<std::array<double, kPicardNodes>, kPicardNodes> S;
};

double lagrange(const PanelRule& r, int j, double x) {
    double v = 1.0;
    for (int m = 0; m < kPicardNodes; ++m)
        if (m != j) v *= (x - r.t[m]) / (r.t[j] - r.t[m]);
    return v;
}

const PanelRule& panel_rule() {
    static const PanelRule rule = [] {
        PanelRule r{};
        using GL = boost::math::quadrature::gauss<double, kPicardNodes>;
        const auto& x = GL::abscissa();
        const auto& wt = GL::weights();
        const int h = kPicardNodes / 2;
        for (int i = 0; i < h; ++i) {
            r.t[h - 1 - i] = -x[i];
            r.w[h - 1 - i] = wt[i];
            r.t[h + i] = x[i];
            r.w[h + i] = wt[i];
        }
        for (int j = 0; j < kPicardNodes; ++j) {
            double p = 1.0;
            for (int m = 0; m < kPicardNodes; ++m)
                if (m != j) p *= r.t[j] - r.t[m];
            r.bary[j] = 1.0 / p;
        }
        for (int i = 0; i < kPicardNodes; ++i) {
            const double half = 0.5 * (r.t[i] + 1.0), mid = 0.5 * (r.t[i] - 1.0);
            for (int j = 0; j < kPicardNodes; ++j) {
                double s = 0.0;
                for (int q = 0; q < kPicardNodes; ++q) s += r.w[q] * lagrange(r, j, mid + half * r.t[q]);
                r.S[i][j] = half * s;
            }
        }
        return r;
    }();
    return rule;
}

// Cumulative integrals of phi from 0 to every node.
std::vector<double> cumulative(const std::vector<double>& edges, const std::vector<double>& phi) {
    const PanelRule& r = panel_rule();
    std::vector<double> out(phi.size());
    double before = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        const double* f = &phi[p * kPicardNodes];
        for (int i = 0; i < kPicardNodes; ++i) {
            double s = 0.0;
            for (int j = 0; j < kPicardNodes; ++j) s += r.S[i][j] * f[j];
            out[p * kPicardNodes + i] = before + half * s;
        }
        double full = 0.0;
        for (int j = 0; j < kPicardNodes; ++j) full += r.w[j] * f[j];
        before += half * full;
    }
    return out;
}

}  // namespace

double PicardResult::value(double zq) const {
    if (zq <= 0.0) return 0.0;
    if (zq > panel_edges_.back() * (1.0 + 1e-14)) throw DomainError("Picard oracle evaluated beyond its cap");
    const PanelRule& r = panel_rule();
    auto it = std::upper_bound(panel_edges_.begin(), panel_edges_.end(), zq);
    std::size_t p = it == panel_edges_.begin() ? 0 : static_cast<std::size_t>(it - panel_edges_.begin()) - 1;
    p = std::min(p, panel_edges_.size() - 2);
    const double lo = panel_edges_[p], hi = panel_edges_[p + 1];
    const double t = (2.0 * zq - lo - hi) / (hi - lo);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < kPicardNodes; ++j) {
        const double d = t - r.t[j];
        if (d == 0.0) return f_[p * kPicardNodes + j] * std::pow(zq, n_);
        const double c = r.bary[j] / d;
        num += c * f_[p * kPicardNodes + j];
        den += c;
    }
    return num / den * std::pow(zq, n_);
}

PicardResult picard_oracle_right(int n, double alpha, double a, int iterations) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("Picard oracle cap must lie in (0, 1)");
    const OdeProblem prob = OdeProblem::limit(Side::right, n);
    std::vector<double> edges{0.0};
    const double g = std::min(0.1, a);
    for (int m = 24; m >= 1; --m) edges.push_back(g * std::ldexp(1.0, -m));
    edges.push_back(g);
    const int uniform = static_cast<int>(std::ceil((a - g) / 0.1 - 1e-12));
    for (int i = 1; i <= uniform; ++i) edges.push_back(g + (a - g) * i / uniform);

    const PanelRule& r = panel_rule();
    std::vector<double> z, G;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p)
        for (int i = 0; i < kPicardNodes; ++i) {
            const double x = 0.5 * (edges[p] + edges[p + 1]) + 0.5 * (edges[p + 1] - edges[p]) * r.t[i];
            z.push_back(x);
            G.push_back(prob.coefficient(x));
        }
    const std::size_t M = z.size();

    // Contraction constant of the map in the weighted sup norm.
    double CG = 0.0;
    for (double v : G) CG = std::max(CG, std::abs(v));
    CG = std::max(CG, std::abs(prob.coefficient(a)));
    std::vector<double> e1(M), e2(M);
    for (std::size_t i = 0; i < M; ++i) {
        e1[i] = z[i] * std::exp(alpha * z[i]);
        e2[i] = std::pow(z[i], 2 * n + 1) * std::exp(alpha * z[i]);
    }
    const auto c1 = cumulative(edges, e1), c2 = cumulative(edges, e2);
    double T1 = 0.0, T2 = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const double wgt = std::exp(-alpha * z[i]);
        T1 = std::max(T1, wgt * c1[i]);
        T2 = std::max(T2, wgt * c2[i] / std::pow(z[i], 2 * n));
    }
    PicardResult res;
    res.predicted_factor = CG * (T1 + T2) / (2.0 * n);
    if (!(res.predicted_factor < 1.0)) {
        std::ostringstream os;
        os << "Picard map not contractive for alpha = " << alpha << " (factor " << res.predicted_factor
           << "); increase alpha";
        throw DomainError(os.str());
    }

    std::vector<double> f(M, 1.0), p1(M), p2(M);
    double last = -1.0;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < M; ++i) {
            p1[i] = z[i] * G[i] * f[i];
            p2[i] = std::pow(z[i], 2 * n + 1) * G[i] * f[i];
        }
        const auto i1 = cumulative(edges, p1), i2 = cumulative(edges, p2);
        double diff = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            const double next = 1.0 + (i1[i] - i2[i] / std::pow(z[i], 2 * n)) / (2.0 * n);
            diff = std::max(diff, std::exp(-alpha * z[i]) * std::abs(next - f[i]));
            f[i] = next;
        }
        res.iterations = it + 1;
        if (last > 0.0 && diff > 1e-13) res.ratios.push_back(diff / last);
        last = diff;
        if (diff < 1e-16) break;
    }
    res.z = z;
    res.h.resize(M);
    for (std::size_t i = 0; i < M; ++i) res.h[i] = std::pow(z[i], n) * f[i];
    res.f_ = f;
    res.panel_edges_ = edges;
    res.nodes_per_panel_ = kPicardNodes;
    res.n_ = n;
    return res;
}

}  // namespace vortex
