#include "vortex/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "vortex/errors.hpp"
#include "vortex/mode_assembly.hpp"
#include "vortex/output.hpp"
#include "vortex/profiles.hpp"
#include "vortex/radial_ode.hpp"
#include "vortex/svg.hpp"

namespace vortex {
namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SolveOutcome solve_one(double eps, const RunConfig& cfg) {
    SolveOutcome out;
    out.epsilon = eps;
    try {
        if (eps == 0.0)
            throw NoEigenvalueError(
                "eps = 0: the bracket (-c_R(1,0), -c_L(1,0)) is empty; no periodic mode exists at eps = 0 "
                "(strictly monotone profile)");
        out.result = solve_lambda(eps, cfg.n, solver_options(cfg));
        out.ok = true;
    } catch (const std::exception& e) {
        out.message = e.what();
    }
    return out;
}

Json summary_json(const Lambda2Summary& s) {
    Json j;
    j["epsilons"] = s.epsilons;
    j["lambda2"] = s.lambda2;
    j["max_abs"] = s.max_abs;
    j["min_abs"] = s.min_abs;
    j["ratio"] = s.ratio;
    j["monotone_growth"] = s.monotone_growth;
    j["bounded"] = s.bounded;
    return j;
}

Curve curve_from(const Dataset& d, int xcol, int ycol, std::string label, std::string color,
                 const std::function<bool(const std::vector<double>&)>& keep = {}) {
    Curve c{std::move(label), std::move(color), {}, {}};
    for (const auto& row : d.rows) {
        if (keep && !keep(row)) continue;
        c.x.push_back(row[xcol]);
        c.y.push_back(row[ycol]);
    }
    return c;
}

double meta(const Dataset& d, const std::string& key) {
    for (const auto& [k, v] : d.meta)
        if (k == key) return v;
    throw DomainError("dataset " + d.name + " has no " + key);
}

}  // namespace

SolverOptions solver_options(const RunConfig& cfg) {
    SolverOptions o;
    o.quad_rel_tol = cfg.quad_rel_tol;
    o.root_tol = cfg.root_tol;
    o.eps0 = cfg.eps0;
    o.grid.rel_tol = cfg.ode_rel_tol;
    return o;
}

std::string output_directory(const RunConfig& cfg) {
    const char* env = std::getenv("VORTEX_MODES_OUT");
    return env && *env ? std::string(env) : cfg.output_dir;
}

Lambda2Summary lambda2_summary(std::vector<std::pair<double, double>> samples) {
    std::sort(samples.begin(), samples.end(), [](auto& l, auto& r) { return l.first > r.first; });
    Lambda2Summary s;
    if (samples.empty()) return s;
    s.max_abs = 0.0;
    s.min_abs = std::numeric_limits<double>::infinity();
    for (const auto& [e, l2] : samples) {
        s.epsilons.push_back(e);
        s.lambda2.push_back(l2);
        s.max_abs = std::max(s.max_abs, std::abs(l2));
        s.min_abs = std::min(s.min_abs, std::abs(l2));
    }
    s.ratio = s.min_abs > 0.0 ? s.max_abs / s.min_abs : std::numeric_limits<double>::infinity();
    s.monotone_growth = samples.size() >= 3;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(std::abs(samples[i].second) > std::abs(samples[i - 1].second))) s.monotone_growth = false;
    s.bounded = s.ratio < 10.0 && !s.monotone_growth;
    return s;
}

bool SweepReport::all_ok() const {
    return std::all_of(items.begin(), items.end(), [](const SolveOutcome& o) { return o.ok; });
}

SweepReport run_sweep(const RunConfig& cfg, std::ostream& log) {
    validate(cfg);
    const std::string dir = output_directory(cfg), hash = config_hash(cfg);
    SweepReport rep;
    rep.items.resize(cfg.epsilons.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cfg.epsilons.size(); i = next++) rep.items[i] = solve_one(cfg.epsilons[i], cfg);
    };
    const int jobs = std::clamp(cfg.jobs, 1, static_cast<int>(std::max<std::size_t>(1, cfg.epsilons.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::pair<double, double>> l2, solved;
    for (const SolveOutcome& o : rep.items) {
        const std::string tag = eps_tag(o.epsilon);
        if (!o.ok) {
            log << "eps " << tag << ": FAILED: " << o.message << "\n";
            continue;
        }
        const EigenResult& e = *o.result;
        const ModeField mode = assemble_mode(e);
        Json res = residuals_to_json(e.residuals);
        Json wrapped;
        wrapped["schema_version"] = kSchemaVersion;
        wrapped["config_hash"] = hash;
        wrapped["epsilon"] = e.lambda.epsilon;
        wrapped["n"] = e.n;
        wrapped["lambda"] = e.lambda.total;
        wrapped["residuals"] = res;
        const std::string files[] = {join(dir, "eigen_" + tag + ".json"), join(dir, "mode_" + tag + ".csv"),
                                     join(dir, "residuals_" + tag + ".json")};
        write_text(files[0], eigen_to_json(e, hash).dump(2) + "\n");
        write_text(files[1], dataset_to_csv(mode_profile(mode, cfg.samples), hash));
        write_text(files[2], wrapped.dump(2) + "\n");
        rep.files.insert(rep.files.end(), std::begin(files), std::end(files));
        const double worst = std::max({e.residuals.left, e.residuals.right, e.residuals.physical});
        log << "eps " << tag << ": lambda = " << fmt("%.14f", e.lambda.total)
            << "  lambda1_fit = " << fmt("%.6f", e.lambda.lambda1) << "  lambda2_fit = " << fmt("%.6f", e.lambda.lambda2)
            << "  max residual = " << fmt("%.2e", worst) << "\n";
        for (const auto& w : e.warnings) log << "  warning: " << w << "\n";
        l2.emplace_back(o.epsilon, e.lambda.lambda2);
        solved.emplace_back(o.epsilon, e.lambda.total);
    }

    if (cfg.epsilons.size() > 1) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["config_hash"] = hash;
        j["n"] = cfg.n;
        Json items = Json::array();
        for (const SolveOutcome& o : rep.items) {
            Json it;
            it["epsilon"] = o.epsilon;
            it["ok"] = o.ok;
            if (o.ok) it["lambda"] = o.result->lambda.total;
            else it["error"] = o.message;
            items.push_back(it);
        }
        j["items"] = items;
        if (l2.size() >= 2) {
            rep.lambda2 = lambda2_summary(l2);
            j["lambda2_summary"] = summary_json(*rep.lambda2);
            std::sort(solved.begin(), solved.end(), [](auto& l, auto& r) { return l.first > r.first; });
            Json rows = Json::array();
            for (const ScalingRow& r : difference_scaling_table(cfg.n, solved, solver_options(cfg).grid))
                rows.push_back({{"epsilon", r.epsilon},
                                {"right_norm", r.right_norm},
                                {"left_norm", r.left_norm},
                                {"right_ratio", r.right_ratio},
                                {"left_ratio", r.left_ratio}});
            j["difference_scaling"] = rows;
            const Lambda2Summary& s = *rep.lambda2;
            log << "lambda2 summary: |lambda2| in [" << fmt("%.4g", s.min_abs) << ", " << fmt("%.4g", s.max_abs)
                << "], ratio " << fmt("%.3f", s.ratio) << (s.monotone_growth ? ", monotone growth" : "")
                << (s.bounded ? " -> bounded" : " -> NOT bounded") << "\n";
        }
        const std::string path = join(dir, "sweep_summary.json");
        write_text(path, j.dump(2) + "\n");
        rep.files.push_back(path);
    }
    return rep;
}

std::vector<std::string> run_figures(const RunConfig& cfg, std::ostream& log) {
    validate(cfg);
    const std::string dir = output_directory(cfg), hash = config_hash(cfg), note = "config_hash=" + hash;
    std::vector<std::string> files;
    auto emit = [&](const std::string& name, const std::string& text) {
        write_text(join(dir, name), text);
        files.push_back(join(dir, name));
    };

    FigureParams pp;
    pp.epsilon = 0.1;
    pp.samples = cfg.samples;
    const Dataset prof = figure_data(FigureKind::profiles, pp).front();
    emit("profiles.csv", dataset_to_csv(prof, hash));
    LinePlot lp;
    lp.title = "Vorticity profiles, eps = 0.1";
    lp.xlabel = "r";
    lp.ylabel = "vorticity";
    lp.curves = {curve_from(prof, 0, 1, "varpi_0", "#1f77b4"), curve_from(prof, 0, 2, "varpi_eps", "#d62728")};
    lp.note = note;
    emit("profiles.svg", render_line_plot(lp));

    for (bool zoom : {false, true}) {
        FigureParams cp;
        cp.epsilon = 0.01;
        cp.samples = cfg.samples;
        if (zoom) {
            cp.r_min = 0.98;
            cp.r_max = 1.02;
        }
        const Dataset d = figure_data(FigureKind::c_gap, cp).front();
        const std::string stem = zoom ? "c_gap_zoom" : "c_gap";
        emit(stem + ".csv", dataset_to_csv(d, hash));
        LinePlot g;
        g.title = zoom ? "-c(r) near r = 1 and the gap, eps = 0.01" : "-c(r) and the gap, eps = 0.01";
        g.xlabel = "r";
        g.ylabel = "-c(r)";
        for (int branch : {0, 1}) {
            Curve c = curve_from(d, 0, 1, branch ? "-c, r > 1 + eps/2" : "-c, r < 1 - eps/2",
                                 branch ? "#d62728" : "#1f77b4",
                                 [&](const std::vector<double>& row) { return row[2] == branch; });
            for (double& y : c.y) y = -y;
            g.curves.push_back(std::move(c));
        }
        g.band = std::make_pair(meta(d, "gap_lower"), meta(d, "gap_upper"));
        g.marker_x = meta(d, "r_star");
        g.xrange = std::make_pair(cp.r_min, cp.r_max);
        if (zoom) {
            const double lo = meta(d, "gap_lower"), hi = meta(d, "gap_upper"), w = hi - lo;
            g.yrange = std::make_pair(lo - 4.0 * w, hi + 4.0 * w);
        }
        g.note = note;
        emit(stem + ".svg", render_line_plot(g));
    }

    const double eps = cfg.epsilons.front();
    if (eps > 0.0) {
        SolverOptions o = solver_options(cfg);
        o.verify = false;
        const EigenResult e = solve_lambda(eps, cfg.n, o);
        const ModeField m = assemble_mode(e);
        FigureParams mp;
        mp.epsilon = eps;
        mp.samples = cfg.samples;
        mp.mode = &m;
        const auto ds = figure_data(FigureKind::mode, mp);
        emit("mode_radial.csv", dataset_to_csv(ds[0], hash));
        emit("mode_heatmap.csv", dataset_to_csv(ds[1], hash));
        const std::string title = "W_n(r) cos(n theta), n = " + std::to_string(cfg.n) + ", eps = " + eps_tag(eps);
        emit("mode_heatmap.svg", render_heatmap(title, "r", "theta", ds[1].rows, note));
    } else {
        log << "mode_heatmap.svg skipped: no periodic mode at eps = 0\n";
    }
    for (const auto& f : files) log << "wrote " << f << "\n";
    return files;
}

std::vector<std::string> run_profile_dump(const RunConfig& cfg, std::ostream& log) {
    validate(cfg);
    const std::string dir = output_directory(cfg), hash = config_hash(cfg);
    std::vector<std::string> files;
    for (double eps : cfg.epsilons) {
        const VortexProfile p(eps);
        Dataset d{"profile", {"r", "varpi0", "varpi_eps", "c"}, {}, {{"epsilon", eps}}};
        for (int i = 0; i < cfg.samples; ++i) {
            const double r = 3.0 * i / (cfg.samples - 1);
            d.rows.push_back({r, eval_profile(p, r, ProfileKind::base), eval_profile(p, r, ProfileKind::perturbed),
                              eval_c(p, r)});
        }
        files.push_back(join(dir, "profile_" + eps_tag(eps) + ".csv"));
        write_text(files.back(), dataset_to_csv(d, hash));
    }
    Dataset h{"radial_limit", {"side", "x", "h", "dh_dx"}, {}, {{"n", cfg.n}}};
    for (Side side : {Side::left, Side::right}) {
        const RadialSolution s = integrate_radial(OdeProblem::limit(side, cfg.n), solver_options(cfg).grid);
        for (std::size_t i = 0; i < s.grid.size(); ++i)
            h.rows.push_back({side == Side::left ? 0.0 : 1.0, s.grid[i], s.values[i], s.derivatives[i]});
    }
    files.push_back(join(dir, "radial_limit_n" + std::to_string(cfg.n) + ".csv"));
    write_text(files.back(), dataset_to_csv(h, hash));
    for (const auto& f : files) log << "wrote " << f << "\n";
    return files;
}

}  // namespace vortex
