#include "vortex/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vortex/errors.hpp"
#include "vortex/kernels.hpp"
#include "vortex/profiles.hpp"
#include "vortex/quadrature.hpp"
#include "vortex/radial_ode.hpp"

namespace vortex {
namespace {

CheckResult make(const std::string& name, double achieved, double required, std::string detail = {}) {
    return {name, achieved, required, achieved <= required, std::move(detail)};
}

template <class F>
CheckResult guarded(const std::string& name, double required, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {name, std::numeric_limits<double>::infinity(), required, false, e.what()};
    }
}

}  // namespace

std::vector<CheckResult> run_checks(const CheckOptions& opts) {
    std::vector<CheckResult> out;

    out.push_back(guarded("kernel trig identity", 1e-10, [&] {
        double worst = 0.0;
        for (int n = 1; n <= 8; ++n)
            for (double r : {0.1, 0.5, 0.9, 1.1, 2.0, 5.0}) {
                const double k = opts.kernel ? opts.kernel(n, r) : eval_kernel({n}, r);
                worst = std::max(worst, std::abs(kernel_trig_oracle({n}, r) - k));
            }
        return make("kernel trig identity", worst, 1e-10, "n = 1..8, 6 radii");
    }));

    out.push_back(guarded("angular velocity identity", 1e-9, [&] {
        double worst = 0.0;
        for (double eps : {0.0, 0.05, 0.1})
            for (double r : {0.3, 1.0, 1.02, 2.5})
                worst = std::max(worst, angular_velocity_identity(VortexProfile(eps), r, 1.0).difference);
        return make("angular velocity identity", worst, 1e-9);
    }));

    out.push_back(guarded("closed-form c vs partial mass quadrature", 1e-10, [&] {
        double worst = 0.0;
        for (double eps : {0.0, 0.01, 0.05, 0.1}) {
            const VortexProfile p(eps);
            for (int i = 1; i <= 20; ++i) {
                const double r = 0.15 * i;
                QuadratureSpec q;
                q.rel_tol = 1e-13;
                for (double s : {p.inner(), p.outer()})
                    if (s < r) q.split_points.push_back(s);
                const double mass = adaptive_quad(
                    [&](double s) { return s * eval_profile(p, s, ProfileKind::perturbed); }, 0.0, r, q).value;
                double c;
                if (eps > 0.0 && r > p.inner() && r < p.outer()) c = eval_c(p, r);
                else if (r <= p.inner()) c = eval_c(SideCoefficient{Side::left, eps}, r / p.inner());
                else c = eval_c(SideCoefficient{Side::right, eps}, r / p.outer());
                worst = std::max(worst, std::abs(c + mass / (r * r)));
            }
        }
        return make("closed-form c vs partial mass quadrature", worst, 1e-10, "20 radii x 4 eps");
    }));

    out.push_back(guarded("lambda0 + c(1, 0)", 1e-12, [&] {
        const double v = std::max(std::abs(lambda0() + eval_c(SideCoefficient{Side::left, 0.0}, 1.0)),
                                  std::abs(lambda0() + eval_c(SideCoefficient{Side::right, 0.0}, 1.0)));
        return make("lambda0 + c(1, 0)", v, 1e-12);
    }));

    out.push_back(guarded("d_eps c at x = 1 by finite differences", 1e-6, [&] {
        // One-sided at eps = 0; Richardson removes the O(h) term.
        auto fd = [&](Side s) {
            const double h = 1e-4, c0 = eval_c(SideCoefficient{s, 0.0}, 1.0);
            const double d1 = (eval_c(SideCoefficient{s, h}, 1.0) - c0) / h;
            const double d2 = (eval_c(SideCoefficient{s, 0.5 * h}, 1.0) - c0) / (0.5 * h);
            return 2.0 * d2 - d1;
        };
        const double dl = std::abs(fd(Side::left) - 0.5 * (1.0 - std::log(2.0)));
        const double dr = std::abs(fd(Side::right) - 0.5 * std::log(2.0));
        return make("d_eps c at x = 1 by finite differences", std::max(dl, dr), 1e-6);
    }));

    for (Side side : {Side::left, Side::right}) {
        const std::string name = side == Side::left ? "Wronskian h_L, g_1" : "Wronskian h_R, g_1 (right)";
        out.push_back(guarded(name, 1e-6, [&] {
            const RadialSolution h = integrate_radial(OdeProblem::limit(side, 4));
            const RadialSolution g = second_solution(side, 4);
            const WronskianReport w = side == Side::left ? wronskian_report(h, g, 0.05, 0.999)
                                                         : wronskian_report(g, h, 1.001, 50.0);
            return make(name, w.max_deviation, 1e-6);
        }));
    }

    out.push_back(guarded("Picard oracle vs right shooting", 1e-7, [&] {
        const PicardResult pic = picard_oracle_right(4, 10.0, 0.8);
        const RadialSolution h = integrate_radial(OdeProblem::limit(Side::right, 4));
        const double z0 = 0.5, p0 = pic.value(z0), s0 = h.eval_xi(z0)[0];
        double worst = 0.0;
        for (int i = 0; i <= 75; ++i) {
            const double z = 0.05 + 0.01 * i;
            worst = std::max(worst, std::abs(pic.value(z) / p0 - h.eval_xi(z)[0] / s0));
        }
        return make("Picard oracle vs right shooting", worst, 1e-7, "z in [0.05, 0.8]");
    }));

    out.push_back(guarded("sup |varpi_0'| = 3 sqrt(3) / 8", 1e-6, [&] {
        const double v = base_derivative_sup().value;
        return make("sup |varpi_0'| = 3 sqrt(3) / 8", std::abs(v - 3.0 * std::sqrt(3.0) / 8.0), 1e-6);
    }));
    return out;
}

std::string format_checks(const std::vector<CheckResult>& checks) {
    std::ostringstream os;
    char line[256];
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-4s  %-44s achieved %.3e  required %.1e", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.achieved, c.required);
        os << line;
        if (!c.passed && !c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

Json checks_to_json(const std::vector<CheckResult>& checks) {
    Json j;
    j["schema_version"] = 1;
    bool all = true;
    Json arr = Json::array();
    for (const auto& c : checks) {
        all = all && c.passed;
        arr.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"achieved", std::isfinite(c.achieved) ? Json(c.achieved) : Json(nullptr)},
                       {"required", c.required},
                       {"detail", c.detail}});
    }
    j["passed"] = all;
    j["checks"] = arr;
    return j;
}

}  // namespace vortex
