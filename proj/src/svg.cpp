#include "pierce/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace pierce {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string render_svg(const Instance& inst, std::span<const Point2> transversal, const Point2* heavy) {
    const CurveModel& c = inst.curve;
    double lo_x = c.center.x - c.radius;
    double hi_x = c.center.x + c.radius;
    double lo_y = c.center.y - c.radius;
    double hi_y = c.center.y + c.radius;
    for (const auto& b : inst.bodies) {
        for (Point2 v : b.vertices) {
            lo_x = std::min(lo_x, v.x);
            hi_x = std::max(hi_x, v.x);
            lo_y = std::min(lo_y, v.y);
            hi_y = std::max(hi_y, v.y);
        }
    }
    const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
    lo_x -= pad;
    hi_x += pad;
    lo_y -= pad;
    hi_y += pad;
    const double scale = std::max(hi_x - lo_x, hi_y - lo_y);
    const double stroke = scale / 400.0;

    // y is flipped so the picture has the usual orientation
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"" << num(lo_x) << ' '
        << num(-hi_y) << ' ' << num(hi_x - lo_x) << ' ' << num(hi_y - lo_y) << "\">\n";
    out << "  <circle class=\"curve\" cx=\"" << num(c.center.x) << "\" cy=\"" << num(-c.center.y) << "\" r=\""
        << num(c.radius) << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"" << num(stroke) << "\"/>\n";
    for (const auto& b : inst.bodies) {
        out << "  <path class=\"body\" data-id=\"" << b.id << "\" d=\"";
        for (std::size_t i = 0; i < b.vertices.size(); ++i) {
            out << (i == 0 ? "M" : " L") << num(b.vertices[i].x) << ',' << num(-b.vertices[i].y);
        }
        const char* color = kPalette[static_cast<std::size_t>(b.id) % kPalette.size()];
        out << " Z\" fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"" << color << "\" stroke-width=\""
            << num(stroke) << "\"/>\n";
    }
    for (Point2 t : transversal) {
        out << "  <circle class=\"transversal\" cx=\"" << num(t.x) << "\" cy=\"" << num(-t.y) << "\" r=\""
            << num(4 * stroke) << "\" fill=\"black\"/>\n";
    }
    if (heavy != nullptr) {
        out << "  <rect class=\"heavy\" x=\"" << num(heavy->x - 3 * stroke) << "\" y=\"" << num(-heavy->y - 3 * stroke)
            << "\" width=\"" << num(6 * stroke) << "\" height=\"" << num(6 * stroke) << "\" fill=\"red\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace pierce
