#include "vortex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "vortex/errors.hpp"

namespace vortex {
namespace {

constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525614070, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes.
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b, value, error;
};

double sample(const Integrand& f, double x) {
    double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "non-finite integrand at x = " << x;
        throw EvaluationError(os.str(), x);
    }
    return y;
}

Panel gk21(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv1[10], fv2[10];
    const double fc = sample(f, c);
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = std::abs(resk);
    for (int j = 0; j < 10; ++j) {
        const double dx = h * kXgk[j];
        fv1[j] = sample(f, c - dx);
        fv2[j] = sample(f, c + dx);
        const double s = fv1[j] + fv2[j];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double ah = std::abs(h);
    resk *= h;
    resabs *= ah;
    resasc *= ah;
    double err = std::abs(resk - resg * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk, err};
}

std::vector<double> breakpoints(double a, double b, const QuadratureSpec& spec) {
    std::vector<double> pts{a, b};
    for (double s : spec.split_points)
        if (s > a && s < b) pts.push_back(s);
    if (spec.grading_center) {
        const double c = *spec.grading_center;
        if (c >= a && c <= b) {
            if (c > a && c < b) pts.push_back(c);
            const double tiny = 1e-13 * std::max(1.0, std::abs(c));
            for (int k = 1; k <= spec.grading_levels; ++k) {
                const double w = std::ldexp(1.0, -k);
                if ((c - a) * w > tiny) pts.push_back(c - (c - a) * w);
                if ((b - c) * w > tiny) pts.push_back(c + (b - c) * w);
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    if (a == b) return {};
    if (a > b) {
        QuadResult r = adaptive_quad(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    std::vector<Panel> panels;
    const auto pts = breakpoints(a, b, spec);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) panels.push_back(gk21(f, pts[i], pts[i + 1]));

    auto worse = [&](std::size_t i, std::size_t j) { return panels[i].error < panels[j].error; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
    for (std::size_t i = 0; i < panels.size(); ++i) queue.push(i);

    auto totals = [&]() {
        double v = 0.0, e = 0.0;
        for (const auto& p : panels) {
            v += p.value;
            e += p.error;
        }
        return std::pair{v, e};
    };

    auto [value, error] = totals();
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
        if (static_cast<int>(panels.size()) >= spec.max_panels || queue.empty()) {
            std::ostringstream os;
            os << "quadrature budget exhausted on [" << a << ", " << b << "]: estimate " << value
               << ", error " << error;
            throw QuadratureError(os.str(), value, error);
        }
        const std::size_t i = queue.top();
        queue.pop();
        const Panel p = panels[i];
        const double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b) continue;  // cannot split further; keep its error
        panels[i] = gk21(f, p.a, m);
        panels.push_back(gk21(f, m, p.b));
        queue.push(i);
        queue.push(panels.size() - 1);
        value += panels[i].value + panels.back().value - p.value;
        error += panels[i].error + panels.back().error - p.error;
    }
    std::tie(value, error) = totals();
    return {value, error, static_cast<int>(panels.size())};
}

QuadResult semiinfinite_quad(const Integrand& f, double lower, const QuadratureSpec& spec) {
    if (!(lower > 0.0)) throw DomainError("semiinfinite_quad: lower limit must be positive");
    QuadratureSpec zspec = spec;
    zspec.split_points.clear();
    for (double s : spec.split_points)
        if (s > lower) zspec.split_points.push_back(1.0 / s);
    if (spec.grading_center) zspec.grading_center = 1.0 / *spec.grading_center;
    auto g = [&](double z) { return f(1.0 / z) / (z * z); };
    return adaptive_quad(g, 0.0, 1.0 / lower, zspec);
}

}  // namespace vortex
