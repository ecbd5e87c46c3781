#pragma once
// SVG drawings of a region, its drawn-in diagonals and optionally one tiling.

#include "qoct/graph.hpp"
#include "qoct/matchcount.hpp"
#include "qoct/region.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qoct {

struct RenderOptions {
  int scale = 24;
  int margin = 12;
  bool diagonals = true;
};

inline std::string render_svg(const Region& r, const Matching* tiling = nullptr, const RenderOptions& opt = {}) {
  int x0 = INT_MAX, y0 = INT_MAX, x1 = INT_MIN, y1 = INT_MIN;
  for (auto p : r.polygon()) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  if (x0 > x1) x0 = y0 = x1 = y1 = 0;
  const int s = opt.scale, m = opt.margin;
  auto px = [&](double x) { return m + (x - x0) * s; };
  auto py = [&](double y) { return m + (y1 - y) * s; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * m + (x1 - x0) * s << "\" height=\""
      << 2 * m + (y1 - y0) * s << "\">\n";
  for (const auto& c : r.cells()) {
    out << "<polygon points=\"";
    for (auto p : c.corners()) out << px(p.x) << ',' << py(p.y) << ' ';
    out << "\" fill=\"" << (c.color ? "#555555" : "#ffffff") << "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  }
  if (opt.diagonals) {
    for (int o : r.diagonals()) {
      // y = x + o clipped to the bounding box
      int lo = std::max(x0, y0 - o), hi = std::min(x1, y1 - o);
      if (lo >= hi) continue;
      out << "<line x1=\"" << px(lo) << "\" y1=\"" << py(lo + o) << "\" x2=\"" << px(hi) << "\" y2=\"" << py(hi + o)
          << "\" stroke=\"#1f6fb2\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>\n";
    }
  }
  out << "<polygon points=\"";
  for (auto p : r.polygon()) out << px(p.x) << ',' << py(p.y) << ' ';
  out << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  if (tiling) {
    const auto& cells = r.cells();
    PMGraph g = dual_graph(r);
    for (int e : *tiling) {
      const auto& ed = g.edges().at(e);
      auto a = cells[ed.u].centroid6(), b = cells[ed.v].centroid6();
      out << "<line x1=\"" << px(a.x / 6.0) << "\" y1=\"" << py(a.y / 6.0) << "\" x2=\"" << px(b.x / 6.0)
          << "\" y2=\"" << py(b.y / 6.0) << "\" stroke=\"#d62728\" stroke-width=\"3\" stroke-linecap=\"round\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

// Draws the region with its tiling number `index` in enumeration order.
inline std::string render_tiling_svg(const Region& r, std::size_t index, const RenderOptions& opt = {}) {
  auto g = dual_graph(r);
  Rational total = count_fkt(g);
  if (total == 0) throw std::invalid_argument("region has no tilings");
  if (Rational(static_cast<unsigned long>(index)) >= total)
    throw std::out_of_range("tiling index " + std::to_string(index) + " out of range, region has " + to_string(total) +
                            " tilings");
  auto tilings = enumerate_tilings(g, index + 1);
  return render_svg(r, &tilings.at(index), opt);
}

}  // namespace qoct
