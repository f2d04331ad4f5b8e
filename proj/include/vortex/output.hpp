#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vortex/eigensolver.hpp"
#include "vortex/mode_assembly.hpp"

namespace vortex {

using Json = nlohmann::ordered_json;

Json residuals_to_json(const ResidualReport& r);
Json eigen_to_json(const EigenResult& e, const std::string& config_hash);

// 17 significant digits.
std::string csv_number(double v);
// Header comments carry the meta entries and the config hash.
std::string dataset_to_csv(const Dataset& d, const std::string& config_hash);
// (r, h_n, W_n) on both support components.
Dataset mode_profile(const ModeField& m, int samples);

// Tag used in per-eps file names.
std::string eps_tag(double eps);

void write_text(const std::string& path, const std::string& text);

}  // namespace vortex
