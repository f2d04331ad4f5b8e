#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vortex/output.hpp"

namespace vortex {

struct CheckResult {
    std::string name;
    double achieved = 0.0;
    double required = 0.0;
    bool passed = false;
    std::string detail;
};

struct CheckOptions {
    // Replaces eval_kernel in the kernel identity check (fault injection).
    std::function<double(int n, double r)> kernel;
};

// Fast invariant suite: kernels, angular velocity, eps = 0 solutions, Picard oracle, sup |varpi_0'|.
std::vector<CheckResult> run_checks(const CheckOptions& opts = {});

std::string format_checks(const std::vector<CheckResult>& checks);
Json checks_to_json(const std::vector<CheckResult>& checks);

}  // namespace vortex
