#include "hyptess/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "hyptess/combinatorics.hpp"

namespace hyptess {

namespace {

std::string hsv_hex(double h, double s, double v) {
  h = h - std::floor(h);
  const double c = v * s;
  const double x = c * (1.0 - std::fabs(std::fmod(h * 6.0, 2.0) - 1.0));
  const double m = v - c;
  double r = 0, g = 0, b = 0;
  const int k = static_cast<int>(h * 6.0) % 6;
  switch (k) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>((r + m) * 255.0 + 0.5),
                static_cast<int>((g + m) * 255.0 + 0.5),
                static_cast<int>((b + m) * 255.0 + 0.5));
  return buf;
}

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<CellPolytope>& cells, double window_radius,
                       double pixels_per_unit) {
  const double R = window_radius;
  const double size = 2.0 * R * pixels_per_unit;

  // Stable palette: fingerprints sorted, hue stepped by the golden ratio.
  std::map<std::string, std::string> color;
  {
    std::vector<std::string> keys;
    for (const CellPolytope& c : cells)
      if (!c.touches_window) keys.push_back(canonical_type(c).bytes);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (std::size_t i = 0; i < keys.size(); ++i)
      color[keys[i]] = hsv_hex(0.13 + 0.61803398874989485 * static_cast<double>(i), 0.45, 0.95);
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt2(size)
     << "\" height=\"" << fmt2(size) << "\" viewBox=\"0 0 " << fmt2(size) << " " << fmt2(size)
     << "\">\n";
  os << "<rect width=\"" << fmt2(size) << "\" height=\"" << fmt2(size)
     << "\" fill=\"#ffffff\"/>\n";

  for (const CellPolytope& c : cells) {
    if (c.dim != 2 || c.vertices.size() < 3) continue;
    // Boundary order: angular sort around the centroid.
    Vec cen(2, 0.0);
    for (const Vec& v : c.vertices) {
      cen[0] += v[0] / c.vertices.size();
      cen[1] += v[1] / c.vertices.size();
    }
    std::vector<Vec> ring = c.vertices;
    std::sort(ring.begin(), ring.end(), [&](const Vec& a, const Vec& b) {
      return std::atan2(a[1] - cen[1], a[0] - cen[0]) < std::atan2(b[1] - cen[1], b[0] - cen[0]);
    });
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (i) os << " ";
      os << fmt2((ring[i][0] + R) * pixels_per_unit) << ","
         << fmt2((R - ring[i][1]) * pixels_per_unit);
    }
    std::string fill = "#e8e8e8";
    if (!c.touches_window) fill = color[canonical_type(c).bytes];
    os << "\" fill=\"" << fill << "\" stroke=\"#303030\" stroke-width=\"0.6\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hyptess
