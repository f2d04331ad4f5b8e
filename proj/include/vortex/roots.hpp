#pragma once

#include <functional>

namespace vortex {

struct RootResult {
    double root = 0.0;
    double value = 0.0;
    int iterations = 0;
};

// Brent's method. Requires f(lo) and f(hi) of opposite sign.
RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double tol = 1e-12, int max_iter = 200);

// Same, with endpoint values already known.
RootResult brent_root(const std::function<double(double)>& f, double lo, double hi, double flo,
                      double fhi, double tol, int max_iter);

// Golden-section search for a maximum of a unimodal f on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

}  // namespace vortex
