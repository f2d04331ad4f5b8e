#include "vortex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace vortex {
namespace {

constexpr double kW = 640, kH = 420, kL = 70, kR = 20, kT = 40, kB = 50;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1;
    double px(double x) const { return kL + (x - x0) / (x1 - x0) * (kW - kL - kR); }
    double py(double y) const { return kH - kB - (y - y0) / (y1 - y0) * (kH - kT - kB); }
};

void header(std::ostringstream& os, const std::string& title, const std::string& note) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
       << kW << " " << kH << "\">\n";
    if (!note.empty()) os << "<!-- " << escape(note) << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
       << escape(title) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& xl, const std::string& yl) {
    os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    os << "<rect x=\"" << num(kL) << "\" y=\"" << num(kT) << "\" width=\"" << num(kW - kL - kR) << "\" height=\""
       << num(kH - kT - kB) << "\"/>\n</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = f.x0 + (f.x1 - f.x0) * i / 5, y = f.y0 + (f.y1 - f.y0) * i / 5;
        os << "<text x=\"" << num(f.px(x)) << "\" y=\"" << num(kH - kB + 16) << "\" text-anchor=\"middle\">" << tick(x)
           << "</text>\n";
        os << "<text x=\"" << num(kL - 6) << "\" y=\"" << num(f.py(y) + 4) << "\" text-anchor=\"end\">" << tick(y)
           << "</text>\n";
    }
    os << "<text x=\"" << num(kL + (kW - kL - kR) / 2) << "\" y=\"" << num(kH - 12)
       << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(xl) << "</text>\n";
    os << "<text x=\"16\" y=\"" << num(kT + (kH - kT - kB) / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
       << "transform=\"rotate(-90 16 " << num(kT + (kH - kT - kB) / 2) << ")\">" << escape(yl) << "</text>\n";
    os << "</g>\n";
}

}  // namespace

std::string render_line_plot(const LinePlot& p) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& c : p.curves)
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            x0 = std::min(x0, c.x[i]);
            x1 = std::max(x1, c.x[i]);
            y0 = std::min(y0, c.y[i]);
            y1 = std::max(y1, c.y[i]);
        }
    if (p.band) {
        y0 = std::min(y0, p.band->first);
        y1 = std::max(y1, p.band->second);
    }
    if (p.xrange) std::tie(x0, x1) = *p.xrange;
    if (p.yrange) std::tie(y0, y1) = *p.yrange;
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y1 = y0 + 1.0;
    const double pad = 0.05 * (y1 - y0);
    if (!p.yrange) {
        y0 -= pad;
        y1 += pad;
    }
    const Frame f{x0, x1, y0, y1};

    std::ostringstream os;
    header(os, p.title, p.note);
    os << "<defs><clipPath id=\"plot\"><rect x=\"" << num(kL) << "\" y=\"" << num(kT) << "\" width=\""
       << num(kW - kL - kR) << "\" height=\"" << num(kH - kT - kB) << "\"/></clipPath></defs>\n";
    os << "<g clip-path=\"url(#plot)\">\n";
    if (p.band)
        os << "<rect x=\"" << num(kL) << "\" y=\"" << num(f.py(p.band->second)) << "\" width=\"" << num(kW - kL - kR)
           << "\" height=\"" << num(f.py(p.band->first) - f.py(p.band->second))
           << "\" fill=\"#7fc97f\" fill-opacity=\"0.35\"/>\n";
    if (p.marker_x)
        os << "<line x1=\"" << num(f.px(*p.marker_x)) << "\" x2=\"" << num(f.px(*p.marker_x)) << "\" y1=\"" << num(kT)
           << "\" y2=\"" << num(kH - kB) << "\" stroke=\"#555\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& c : p.curves) {
        os << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < c.x.size(); ++i) os << (i ? " " : "") << num(f.px(c.x[i])) << "," << num(f.py(c.y[i]));
        os << "\"/>\n";
    }
    os << "</g>\n";
    axes(os, f, p.xlabel, p.ylabel);
    os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < p.curves.size(); ++i) {
        const double y = kT + 16 + 16 * static_cast<double>(i);
        os << "<line x1=\"" << num(kW - kR - 150) << "\" x2=\"" << num(kW - kR - 125) << "\" y1=\"" << num(y - 4)
           << "\" y2=\"" << num(y - 4) << "\" stroke=\"" << p.curves[i].color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(kW - kR - 120) << "\" y=\"" << num(y) << "\">" << escape(p.curves[i].label)
           << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string render_heatmap(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<std::vector<double>>& rows, const std::string& note) {
    std::map<double, int> xs, ys;
    double vmax = 0.0;
    for (const auto& r : rows) {
        xs.emplace(r[0], 0);
        ys.emplace(r[1], 0);
        vmax = std::max(vmax, std::abs(r[2]));
    }
    int i = 0;
    for (auto& [k, v] : xs) v = i++;
    i = 0;
    for (auto& [k, v] : ys) v = i++;
    const double x0 = xs.empty() ? 0.0 : xs.begin()->first, x1 = xs.empty() ? 1.0 : xs.rbegin()->first;
    const double y0 = ys.empty() ? 0.0 : ys.begin()->first, y1 = ys.empty() ? 1.0 : ys.rbegin()->first;
    const double dx = xs.size() > 1 ? (x1 - x0) / (xs.size() - 1) : 1.0;
    const double dy = ys.size() > 1 ? (y1 - y0) / (ys.size() - 1) : 1.0;
    const Frame f{x0 - dx / 2, x1 + dx / 2, y0 - dy / 2, y1 + dy / 2};

    std::ostringstream os;
    header(os, title, note);
    os << "<g shape-rendering=\"crispEdges\">\n";
    for (const auto& r : rows) {
        const double t = vmax > 0.0 ? r[2] / vmax : 0.0;
        const int red = t > 0 ? 255 : static_cast<int>(std::lround(255 * (1 + t)));
        const int blue = t < 0 ? 255 : static_cast<int>(std::lround(255 * (1 - t)));
        const int green = static_cast<int>(std::lround(255 * (1 - std::abs(t))));
        char color[8];
        std::snprintf(color, sizeof color, "#%02x%02x%02x", red, green, blue);
        os << "<rect x=\"" << num(f.px(r[0] - dx / 2)) << "\" y=\"" << num(f.py(r[1] + dy / 2)) << "\" width=\""
           << num(f.px(r[0] + dx / 2) - f.px(r[0] - dx / 2)) << "\" height=\""
           << num(f.py(r[1] - dy / 2) - f.py(r[1] + dy / 2)) << "\" fill=\"" << color << "\"/>\n";
    }
    os << "</g>\n";
    axes(os, f, xlabel, ylabel);
    os << "</svg>\n";
    return os.str();
}

}  // namespace vortex
