#include "hexlb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace hexlb {

namespace {

// Evenly spaced hues, medium saturation; enough contrast for small N.
std::string hex_color(int index, int count) {
  const double hue = 360.0 * index / std::max(1, count);
  const double s = 0.62, l = 0.62;
  const double c = (1 - std::abs(2 * l - 1)) * s;
  const double hp = hue / 60.0;
  const double x = c * (1 - std::abs(std::fmod(hp, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = l - c / 2;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround((r + m) * 255)),
                static_cast<int>(std::lround((g + m) * 255)),
                static_cast<int>(std::lround((b + m) * 255)));
  return buf;
}

}  // namespace

std::string layout_svg(const HexLayout& layout, const Assignment& assignment) {
  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_y;
  for (int g = 0; g < layout.triangle_count(); ++g) {
    for (const Point& p : layout.triangle_vertices(layout.triangle_at(g))) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double pad = 0.1 * layout.side();
  const double scale = 100.0;
  const double w = (max_x - min_x + 2 * pad) * scale;
  const double h = (max_y - min_y + 2 * pad) * scale;
  auto sx = [&](double x) { return (x - min_x + pad) * scale; };
  // Flip y so the layout reads with +y up.
  auto sy = [&](double y) { return h - (y - min_y + pad) * scale; };

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                w, h, w, h);
  out += buf;
  for (int g = 0; g < layout.triangle_count(); ++g) {
    const TriangleId t = layout.triangle_at(g);
    const auto& v = layout.triangle_vertices(t);
    const std::string fill =
        hex_color(assignment.serving[g], layout.hex_count());
    std::snprintf(buf, sizeof buf,
                  "  <polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\" "
                  "fill=\"%s\" stroke=\"#333\" stroke-width=\"0.8\"/>\n",
                  sx(v[0].x), sy(v[0].y), sx(v[1].x), sy(v[1].y), sx(v[2].x),
                  sy(v[2].y), fill.c_str());
    out += buf;
  }
  for (int b = 0; b < layout.hex_count(); ++b) {
    const Point& c = layout.center(b);
    std::snprintf(buf, sizeof buf,
                  "  <text x=\"%.2f\" y=\"%.2f\" font-size=\"14\" "
                  "text-anchor=\"middle\">BS %d</text>\n",
                  sx(c.x), sy(c.y) + 5, b);
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

void save_svg(const std::string& svg, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << svg;
}

}  // namespace hexlb
