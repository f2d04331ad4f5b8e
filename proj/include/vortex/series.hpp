#pragma once

#include <limits>
#include <vector>

namespace vortex {

// Truncated expansion  sum_{k,j} coeffs[k][j] * t^(leading+k) * log^j|t|,  t = x - center.
struct SeriesAtPoint {
    double center = 0.0;
    int leading = 0;
    double radius = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    int log_degree() const;
    double coeff(int k, int j = 0) const;

    double eval(double x) const;
    double derivative(double x) const;
    // Largest |term| among the last two orders at x; used to check truncation.
    double tail(double x) const;
};

SeriesAtPoint series_add(const SeriesAtPoint& a, const SeriesAtPoint& b);
SeriesAtPoint series_multiply(const SeriesAtPoint& a, const SeriesAtPoint& b);
SeriesAtPoint series_scale(const SeriesAtPoint& a, double s);
// Requires leading 0 and a log-free nonzero constant term.
SeriesAtPoint series_reciprocal(const SeriesAtPoint& a);

// Plain truncated Taylor arithmetic: t[k] is the coefficient of t^k.
namespace taylor {

using Poly = std::vector<double>;

Poly truncate(Poly a, int order);
Poly add(const Poly& a, const Poly& b);
Poly scale(const Poly& a, double s);
Poly mul(const Poly& a, const Poly& b, int order);
Poly reciprocal(const Poly& a, int order);
// log(1 + w) for w with zero constant term.
Poly log1p(const Poly& w, int order);
// Substitute t -> c t^p.
Poly stretch(const Poly& a, double c, int p, int order);
double eval(const Poly& a, double t);

SeriesAtPoint to_series(const Poly& a, double center, double radius);

}  // namespace taylor

}  // namespace vortex
