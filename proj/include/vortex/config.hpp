#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vortex {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    int n = 4;
    std::vector<double> epsilons{0.1};
    double eps0 = 0.15;
    double alpha = 0.5;
    int holder_grid = 600;
    double quad_rel_tol = 1e-10;
    double ode_rel_tol = 1e-12;
    double root_tol = 1e-13;
    int samples = 400;
    std::string output_dir = "vortex_out";
    int jobs = 1;
    std::uint64_t seed = 0;  // nothing is random; kept so runs record it

    bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError on out-of-range values. eps = 0 is accepted so the solver can report it.
void validate(const RunConfig& cfg);

// Flat key=value text with [sections], or a JSON object (nested by section or with dotted keys).
// Unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Canonical key=value form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);
// FNV-1a of the canonical form, 16 hex digits.
std::string config_hash(const RunConfig& cfg);

std::vector<double> parse_list(const std::string& text);
// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace vortex
