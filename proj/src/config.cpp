#include "vortex/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "vortex/errors.hpp"

namespace vortex {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const std::string t = trim(v);
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || p != t.data() + t.size()) throw ConfigError("bad number for " + key + ": '" + v + "'");
    return out;
}

long long to_int(const std::string& key, const std::string& v) {
    long long out = 0;
    const std::string t = trim(v);
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || p != t.data() + t.size()) throw ConfigError("bad integer for " + key + ": '" + v + "'");
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"solver.n", [](RunConfig& c, const std::string& v) { c.n = static_cast<int>(to_int("solver.n", v)); }},
        {"solver.epsilon", [](RunConfig& c, const std::string& v) { c.epsilons = parse_list(v); }},
        {"solver.eps0", [](RunConfig& c, const std::string& v) { c.eps0 = to_double("solver.eps0", v); }},
        {"solver.samples",
         [](RunConfig& c, const std::string& v) { c.samples = static_cast<int>(to_int("solver.samples", v)); }},
        {"holder.alpha", [](RunConfig& c, const std::string& v) { c.alpha = to_double("holder.alpha", v); }},
        {"holder.grid",
         [](RunConfig& c, const std::string& v) { c.holder_grid = static_cast<int>(to_int("holder.grid", v)); }},
        {"tolerances.quadrature",
         [](RunConfig& c, const std::string& v) { c.quad_rel_tol = to_double("tolerances.quadrature", v); }},
        {"tolerances.ode", [](RunConfig& c, const std::string& v) { c.ode_rel_tol = to_double("tolerances.ode", v); }},
        {"tolerances.root", [](RunConfig& c, const std::string& v) { c.root_tol = to_double("tolerances.root", v); }},
        {"output.dir", [](RunConfig& c, const std::string& v) { c.output_dir = trim(v); }},
        {"run.jobs", [](RunConfig& c, const std::string& v) { c.jobs = static_cast<int>(to_int("run.jobs", v)); }},
        {"run.seed",
         [](RunConfig& c, const std::string& v) { c.seed = static_cast<std::uint64_t>(to_int("run.seed", v)); }},
    };
    return table;
}

void assign(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown config key: " + key);
    it->second(cfg, value);
}

std::string json_scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty()) s += ",";
            s += json_scalar(e);
        }
        return s;
    }
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
}

RunConfig parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("JSON config must be an object");
    RunConfig cfg;
    for (const auto& [k, v] : j.items()) {
        if (v.is_object()) {
            for (const auto& [k2, v2] : v.items()) assign(cfg, k + "." + k2, json_scalar(v2));
        } else {
            assign(cfg, k, json_scalar(v));
        }
    }
    validate(cfg);
    return cfg;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(to_double("list", item));
    }
    if (out.empty()) throw ConfigError("empty list: '" + text + "'");
    return out;
}

void validate(const RunConfig& c) {
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (c.n < 2) fail("n must be >= 2");
    if (!(c.eps0 > 0.0 && c.eps0 < 2.0)) fail("eps0 must lie in (0, 2)");
    if (c.epsilons.empty()) fail("no epsilon given");
    for (double e : c.epsilons)
        if (!(e >= 0.0 && e <= c.eps0)) fail("epsilon " + format_double(e) + " outside [0, eps0]");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail("alpha must lie in (0, 1)");
    if (c.holder_grid < 16) fail("holder grid too small");
    for (double t : {c.quad_rel_tol, c.ode_rel_tol, c.root_tol})
        if (!(t > 0.0 && t < 1e-3)) fail("tolerances must lie in (0, 1e-3)");
    if (c.samples < 16) fail("samples must be >= 16");
    if (c.jobs < 1) fail("jobs must be >= 1");
    if (c.output_dir.empty()) fail("output dir is empty");
}

RunConfig parse_config(const std::string& text) {
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '{') return parse_json(t);
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        assign(cfg, section.empty() ? key : section + "." + key, line.substr(eq + 1));
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    std::string eps;
    for (double e : c.epsilons) eps += (eps.empty() ? "" : ",") + format_double(e);
    os << "[solver]\n"
       << "n = " << c.n << "\n"
       << "epsilon = " << eps << "\n"
       << "eps0 = " << format_double(c.eps0) << "\n"
       << "samples = " << c.samples << "\n"
       << "[holder]\n"
       << "alpha = " << format_double(c.alpha) << "\n"
       << "grid = " << c.holder_grid << "\n"
       << "[tolerances]\n"
       << "quadrature = " << format_double(c.quad_rel_tol) << "\n"
       << "ode = " << format_double(c.ode_rel_tol) << "\n"
       << "root = " << format_double(c.root_tol) << "\n"
       << "[output]\n"
       << "dir = " << c.output_dir << "\n"
       << "[run]\n"
       << "jobs = " << c.jobs << "\n"
       << "seed = " << c.seed << "\n";
    return os.str();
}

std::string config_hash(const RunConfig& c) {
    // Output location and worker count do not change results.
    RunConfig k = c;
    k.output_dir = "-";
    k.jobs = 1;
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : serialize_config(k)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace vortex
