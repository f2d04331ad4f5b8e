#include "vortex/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vortex/config.hpp"
#include "vortex/errors.hpp"

namespace vortex {

Json residuals_to_json(const ResidualReport& r) {
    Json j;
    j["rescaled_left"] = r.left;
    j["rescaled_right"] = r.right;
    j["physical"] = r.physical;
    j["N_L_at_1"] = r.N_L_at_1;
    j["N_R_at_1"] = r.N_R_at_1;
    j["scale"] = r.scale;
    j["jacobian_mismatch"] = r.jacobian_mismatch;
    j["trivial"] = r.trivial;
    j["collocation"] = {{"left", r.left_points.size()},
                        {"right", r.right_points.size()},
                        {"physical", r.physical_radii.size()}};
    return j;
}

Json eigen_to_json(const EigenResult& e, const std::string& config_hash) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["config_hash"] = config_hash;
    j["epsilon"] = e.lambda.epsilon;
    j["n"] = e.n;
    j["lambda"] = {{"total", e.lambda.total},
                   {"lambda0", e.lambda.lambda0},
                   {"lambda1_fit", e.lambda.lambda1},
                   {"lambda2_fit", e.lambda.lambda2},
                   {"lambda1_ref", e.lambda.lambda1_ref}};
    j["bracket"] = {e.bracket.first, e.bracket.second};
    j["I1"] = e.I1;
    j["I2"] = e.I2;
    j["A"] = e.A;
    j["B"] = e.B;
    j["q_factor"] = e.q_factor;
    j["det"] = e.det;
    j["iterations"] = e.iterations;
    j["warnings"] = e.warnings;
    j["residuals"] = residuals_to_json(e.residuals);
    return j;
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dataset_to_csv(const Dataset& d, const std::string& config_hash) {
    std::ostringstream os;
    os << "# " << d.name << "\n";
    os << "# config_hash=" << config_hash << "\n";
    for (const auto& [k, v] : d.meta) os << "# " << k << "=" << csv_number(v) << "\n";
    for (std::size_t i = 0; i < d.columns.size(); ++i) os << (i ? "," : "") << d.columns[i];
    os << "\n";
    for (const auto& row : d.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_number(row[i]);
        os << "\n";
    }
    return os.str();
}

Dataset mode_profile(const ModeField& m, int samples) {
    Dataset d{"mode", {"r", "h_n", "W_n"}, {}, {{"epsilon", m.epsilon}, {"n", m.n}, {"lambda", m.lambda}, {"A", m.A}, {"B", m.B}}};
    const double a = m.inner(), b = m.outer();
    const int half = samples / 2;
    for (int i = 1; i <= half; ++i) {
        const double r = a * i / half;
        d.rows.push_back({r, m.h_n(r), m.W_n(r)});
    }
    for (int i = 0; i < samples - half; ++i) {
        const double r = b * std::pow(10.0, 2.0 * i / (samples - half - 1));
        d.rows.push_back({r, m.h_n(r), m.W_n(r)});
    }
    return d;
}

std::string eps_tag(double eps) {
    return format_double(eps);
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace vortex
