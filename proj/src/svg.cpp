#include "rpr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rpr {

namespace {

struct Box {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

    void include(const Vec2& p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Geometry& g, const std::vector<FkSolution>& solutions) {
    const auto anchors = base_anchors(g);

    Box box{anchors[0].x, anchors[0].x, anchors[0].y, anchors[0].y};
    for (const Vec2& a : anchors) {
        box.include(a);
    }
    for (const FkSolution& s : solutions) {
        for (const Vec2& b : platform_joints(g, s.pose)) {
            box.include(b);
        }
    }
    const double span_x = std::max(box.xmax - box.xmin, 1e-6);
    const double span_y = std::max(box.ymax - box.ymin, 1e-6);
    const double margin = 0.1 * std::max(span_x, span_y);
    const double wx = span_x + 2.0 * margin;
    const double wy = span_y + 2.0 * margin;

    const std::size_t modes = std::max<std::size_t>(solutions.size(), 1);
    const std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(modes))));
    const std::size_t rows = (modes + cols - 1) / cols;

    const double cell = 260.0;
    const double scale = (cell * 0.96) / std::max(wx, wy);
    const double width = cell * static_cast<double>(cols);
    const double height = cell * static_cast<double>(rows);

    // world -> cell coordinates, y flipped for screen space
    auto map_x = [&](double x) { return (x - box.xmin + margin) * scale + cell * 0.02; };
    auto map_y = [&](double y) { return cell - ((y - box.ymin + margin) * scale + cell * 0.02); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    auto draw_base = [&](std::ostringstream& s) {
        s << "    <polygon points=\"";
        for (const Vec2& a : anchors) {
            s << fmt(map_x(a.x)) << "," << fmt(map_y(a.y)) << " ";
        }
        s << "\" fill=\"#eef2f7\" stroke=\"#50607a\" stroke-width=\"1\"/>\n";
        for (const Vec2& a : anchors) {
            s << "    <circle cx=\"" << fmt(map_x(a.x)) << "\" cy=\"" << fmt(map_y(a.y))
              << "\" r=\"3\" fill=\"#50607a\"/>\n";
        }
    };

    std::size_t idx = 0;
    auto cell_origin = [&](std::size_t i) {
        return std::pair<double, double>{static_cast<double>(i % cols) * cell,
                                         static_cast<double>(i / cols) * cell};
    };

    if (solutions.empty()) {
        svg << "  <g id=\"base-only\">\n";
        draw_base(svg);
        svg << "  </g>\n";
    }
    for (const FkSolution& s : solutions) {
        const auto [ox, oy] = cell_origin(idx);
        const auto joints = platform_joints(g, s.pose);
        svg << "  <g id=\"mode-" << (idx + 1) << "\" transform=\"translate(" << fmt(ox) << ","
            << fmt(oy) << ")\">\n";
        draw_base(svg);
        for (std::size_t leg = 0; leg < 3; ++leg) {
            svg << "    <line x1=\"" << fmt(map_x(anchors[leg].x)) << "\" y1=\""
                << fmt(map_y(anchors[leg].y)) << "\" x2=\"" << fmt(map_x(joints[leg].x))
                << "\" y2=\"" << fmt(map_y(joints[leg].y))
                << "\" stroke=\"#888888\" stroke-width=\"1.5\"/>\n";
        }
        const char* fill = s.kind == SolutionKind::DegenerateRoot ? "#f6d6d5" : "#d5e8f6";
        const char* stroke = s.kind == SolutionKind::DegenerateRoot ? "#a33c38" : "#2b6ca3";
        svg << "    <polygon points=\"";
        for (const Vec2& b : joints) {
            svg << fmt(map_x(b.x)) << "," << fmt(map_y(b.y)) << " ";
        }
        svg << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"/>\n";
        char label[96];
        std::snprintf(label, sizeof(label), "phi = %.3f deg%s", s.pose.phi * 180.0 / kPi,
                      s.kind == SolutionKind::DegenerateRoot ? " (degenerate)" : "");
        svg << "    <text x=\"8\" y=\"16\" font-family=\"monospace\" font-size=\"11\">" << label
            << "</text>\n";
        svg << "  </g>\n";
        ++idx;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace rpr
