#include "vortex/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vortex/errors.hpp"

namespace vortex {
namespace {

using Row = std::vector<double>;

Row row_add(const Row& a, const Row& b) {
    Row r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) r[j] += a[j];
    for (std::size_t j = 0; j < b.size(); ++j) r[j] += b[j];
    return r;
}

void row_accumulate(Row& acc, const Row& a, const Row& b, double s = 1.0) {
    if (a.empty() || b.empty()) return;
    if (acc.size() < a.size() + b.size() - 1) acc.resize(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += s * a[i] * b[j];
}

void trim(Row& r) {
    while (r.size() > 1 && r.back() == 0.0) r.pop_back();
}

void check_radius(const SeriesAtPoint& s, double x) {
    if (std::abs(x - s.center) > s.radius) {
        std::ostringstream os;
        os << "series evaluation at " << x << " outside radius " << s.radius << " about " << s.center;
        throw DomainError(os.str());
    }
}

double horner_log(const Row& r, double L) {
    double v = 0.0;
    for (std::size_t j = r.size(); j-- > 0;) v = v * L + r[j];
    return v;
}

}  // namespace

int SeriesAtPoint::log_degree() const {
    int d = 0;
    for (const auto& r : coeffs)
        for (int j = static_cast<int>(r.size()) - 1; j > d; --j)
            if (r[j] != 0.0) {
                d = j;
                break;
            }
    return d;
}

double SeriesAtPoint::coeff(int k, int j) const {
    if (k < 0 || k >= static_cast<int>(coeffs.size())) return 0.0;
    const auto& r = coeffs[k];
    return j < static_cast<int>(r.size()) ? r[j] : 0.0;
}

double SeriesAtPoint::eval(double x) const {
    check_radius(*this, x);
    const double t = x - center;
    if (t == 0.0) {
        if (leading < 0) throw DomainError("series with negative leading exponent evaluated at its center");
        return leading > 0 ? 0.0 : coeff(0, 0);
    }
    const double L = std::log(std::abs(t));
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * t + horner_log(coeffs[k], L);
    return v * std::pow(t, leading);
}

double SeriesAtPoint::derivative(double x) const {
    check_radius(*this, x);
    const double t = x - center;
    if (t == 0.0) {
        if (log_degree() > 0) throw DomainError("derivative of a log series at its center");
        const int k = 1 - leading;
        return k >= 0 ? coeff(k, 0) : 0.0;
    }
    const double L = std::log(std::abs(t));
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const auto& r = coeffs[k];
        const double m = static_cast<double>(leading) + static_cast<double>(k);
        double term = 0.0, Lp = 1.0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            term += m * r[j] * Lp;
            if (j + 1 < r.size()) term += static_cast<double>(j + 1) * r[j + 1] * Lp;
            Lp *= L;
        }
        v = v * t + term;
    }
    return v * std::pow(t, leading - 1);
}

double SeriesAtPoint::tail(double x) const {
    const double t = x - center;
    if (t == 0.0 || coeffs.empty()) return 0.0;
    const double L = std::log(std::abs(t));
    double worst = 0.0;
    const int K = order();
    for (int k = std::max(0, K - 1); k <= K; ++k)
        worst = std::max(worst, std::abs(horner_log(coeffs[k], L) * std::pow(t, leading + k)));
    return worst;
}

SeriesAtPoint series_add(const SeriesAtPoint& a, const SeriesAtPoint& b) {
    if (a.center != b.center) throw DomainError("series_add: centers differ");
    SeriesAtPoint r;
    r.center = a.center;
    r.radius = std::min(a.radius, b.radius);
    r.leading = std::min(a.leading, b.leading);
    const int top = std::min(a.leading + a.order(), b.leading + b.order());
    if (top < r.leading) return r;
    r.coeffs.assign(top - r.leading + 1, Row{0.0});
    for (int k = 0; k <= a.order() && a.leading + k <= top; ++k)
        r.coeffs[a.leading + k - r.leading] = row_add(r.coeffs[a.leading + k - r.leading], a.coeffs[k]);
    for (int k = 0; k <= b.order() && b.leading + k <= top; ++k)
        r.coeffs[b.leading + k - r.leading] = row_add(r.coeffs[b.leading + k - r.leading], b.coeffs[k]);
    for (auto& row : r.coeffs) trim(row);
    return r;
}

SeriesAtPoint series_multiply(const SeriesAtPoint& a, const SeriesAtPoint& b) {
    if (a.center != b.center) throw DomainError("series_multiply: centers differ");
    SeriesAtPoint r;
    r.center = a.center;
    r.radius = std::min(a.radius, b.radius);
    r.leading = a.leading + b.leading;
    const int K = std::min(a.order(), b.order());
    if (K < 0) return r;
    r.coeffs.assign(K + 1, Row{0.0});
    for (int i = 0; i <= K; ++i)
        for (int j = 0; i + j <= K; ++j) row_accumulate(r.coeffs[i + j], a.coeffs[i], b.coeffs[j]);
    for (auto& row : r.coeffs) trim(row);
    return r;
}

SeriesAtPoint series_scale(const SeriesAtPoint& a, double s) {
    SeriesAtPoint r = a;
    for (auto& row : r.coeffs)
        for (double& c : row) c *= s;
    return r;
}

SeriesAtPoint series_reciprocal(const SeriesAtPoint& a) {
    if (a.leading != 0 || a.coeffs.empty() || a.coeffs[0].empty() || a.coeffs[0][0] == 0.0)
        throw DomainError("series_reciprocal: needs a nonzero constant term");
    for (std::size_t j = 1; j < a.coeffs[0].size(); ++j)
        if (a.coeffs[0][j] != 0.0) throw DomainError("series_reciprocal: log term at order 0");
    const double d0 = a.coeffs[0][0];
    SeriesAtPoint r;
    r.center = a.center;
    r.radius = a.radius;
    r.coeffs.assign(a.coeffs.size(), Row{0.0});
    r.coeffs[0] = Row{1.0 / d0};
    for (std::size_t k = 1; k < a.coeffs.size(); ++k) {
        Row acc{0.0};
        for (std::size_t i = 1; i <= k; ++i) row_accumulate(acc, a.coeffs[i], r.coeffs[k - i], -1.0 / d0);
        trim(acc);
        r.coeffs[k] = acc;
    }
    return r;
}

namespace taylor {

Poly truncate(Poly a, int order) {
    a.resize(order + 1, 0.0);
    return a;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Poly scale(const Poly& a, double s) {
    Poly r = a;
    for (double& c : r) c *= s;
    return r;
}

Poly mul(const Poly& a, const Poly& b, int order) {
    Poly r(order + 1, 0.0);
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i)
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly reciprocal(const Poly& a, int order) {
    if (a.empty() || a[0] == 0.0) throw DomainError("taylor::reciprocal: zero constant term");
    Poly r(order + 1, 0.0);
    r[0] = 1.0 / a[0];
    for (int k = 1; k <= order; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k && i < static_cast<int>(a.size()); ++i) s += a[i] * r[k - i];
        r[k] = -s / a[0];
    }
    return r;
}

Poly log1p(const Poly& w, int order) {
    if (!w.empty() && w[0] != 0.0) throw DomainError("taylor::log1p: nonzero constant term");
    // d/dt log(1+w) = w'/(1+w)
    Poly one_plus = truncate(w, order);
    one_plus[0] = 1.0;
    Poly dw(order + 1, 0.0);
    for (int k = 1; k <= order && k < static_cast<int>(w.size()); ++k) dw[k - 1] = k * w[k];
    const Poly q = mul(dw, reciprocal(one_plus, order), order);
    Poly r(order + 1, 0.0);
    for (int k = 1; k <= order; ++k) r[k] = q[k - 1] / k;
    return r;
}

Poly stretch(const Poly& a, double c, int p, int order) {
    Poly r(order + 1, 0.0);
    double ck = 1.0;
    for (std::size_t k = 0; k < a.size() && static_cast<int>(k) * p <= order; ++k) {
        r[k * p] = a[k] * ck;
        ck *= c;
    }
    return r;
}

double eval(const Poly& a, double t) {
    double v = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) v = v * t + a[k];
    return v;
}

SeriesAtPoint to_series(const Poly& a, double center, double radius) {
    SeriesAtPoint s;
    s.center = center;
    s.radius = radius;
    for (double c : a) s.coeffs.push_back(Row{c});
    return s;
}

}  // namespace taylor

}  // namespace vortex
