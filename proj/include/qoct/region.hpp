#pragma once
// Quasi-octagonal regions on the square lattice with some SW-NE diagonals drawn in.
//
// A drawn diagonal with offset c is the line y = x + c.  It cuts every unit
// square whose SW corner (i,j) has j - i = c into an upper-left and a
// lower-right triangle.

#include "qoct/exact.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qoct {

struct DiagonalSpec {
  int a = 1;
  std::vector<int> upper_gaps;   // d_1..d_k, read downward from the top diagonal
  std::vector<int> middle_gaps;  // dbar_1..dbar_t, read downward from ell
  std::vector<int> lower_gaps;   // d'_1..d'_l, read upward from the bottom diagonal

  friend bool operator==(const DiagonalSpec&, const DiagonalSpec&) = default;
  friend auto operator<=>(const DiagonalSpec&, const DiagonalSpec&) = default;
};

inline void validate(const DiagonalSpec& s) {
  auto positive = [](const std::vector<int>& v, const char* name) {
    if (v.empty()) throw std::invalid_argument(std::string(name) + " must be nonempty");
    for (int g : v)
      if (g < 1) throw std::invalid_argument(std::string(name) + " entries must be >= 1");
  };
  if (s.a < 1) throw std::invalid_argument("a must be >= 1");
  positive(s.upper_gaps, "d");
  positive(s.middle_gaps, "dbar");
  positive(s.lower_gaps, "dprime");
  int sum = std::accumulate(s.middle_gaps.begin(), s.middle_gaps.end(), 0);
  if (sum < static_cast<int>(s.middle_gaps.size()))
    throw std::invalid_argument("sum of dbar must be at least its length");
}

namespace detail {
inline std::string csv(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::vector<int> parse_csv(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad value for " + key + ": '" + text + "'");
    out.push_back(std::stoi(item));
  }
  if (out.empty() || text.back() == ',') throw std::invalid_argument("bad value for " + key);
  return out;
}
}  // namespace detail

inline std::string to_string(const DiagonalSpec& s) {
  return "a=" + std::to_string(s.a) + " d=" + detail::csv(s.upper_gaps) +
         " dbar=" + detail::csv(s.middle_gaps) + " dprime=" + detail::csv(s.lower_gaps);
}

// Parses "a=6 d=5,3 dbar=4,4,4 dprime=3,5".
inline DiagonalSpec parse_spec(const std::string& text) {
  DiagonalSpec s;
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value: " + tok);
    auto key = tok.substr(0, eq);
    if (key != "a" && key != "d" && key != "dbar" && key != "dprime")
      throw std::invalid_argument("unknown key: " + key);
    if (!kv.emplace(key, tok.substr(eq + 1)).second) throw std::invalid_argument("duplicate key: " + key);
  }
  for (const char* k : {"a", "d", "dbar", "dprime"})
    if (!kv.count(k)) throw std::invalid_argument(std::string("missing key: ") + k);
  auto a = detail::parse_csv("a", kv["a"]);
  if (a.size() != 1) throw std::invalid_argument("a takes a single integer");
  s.a = a[0];
  s.upper_gaps = detail::parse_csv("d", kv["d"]);
  s.middle_gaps = detail::parse_csv("dbar", kv["dbar"]);
  s.lower_gaps = detail::parse_csv("dprime", kv["dprime"]);
  validate(s);
  return s;
}

enum class CellKind { square = 0, upper = 1, lower = 2 };  // upper: NW half of a cut square
enum class Part { upper = 0, middle = 1, lower = 2 };

struct Point {
  int x = 0, y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Cell {
  int x = 0, y = 0;  // SW corner of the owning unit square
  CellKind kind = CellKind::square;
  int color = 0;  // 1 black, 0 white
  Part part = Part::upper;
  bool regular = false;

  int offset() const { return y - x; }
  // Orders cells into rows parallel to the diagonals, top to bottom = larger key.
  int row_key() const {
    int o = 2 * offset();
    return kind == CellKind::square ? o : kind == CellKind::upper ? o + 1 : o - 1;
  }
  // True for a triangle whose apex points toward ell'.
  bool toward_ell_prime() const {
    if (kind == CellKind::square) return false;
    return part == Part::lower ? kind == CellKind::upper : kind == CellKind::lower;
  }
  // Centroid in units of 1/6.
  Point centroid6() const {
    switch (kind) {
      case CellKind::square: return {6 * x + 3, 6 * y + 3};
      case CellKind::upper: return {6 * x + 2, 6 * y + 4};
      default: return {6 * x + 4, 6 * y + 2};
    }
  }
  // Corner list, counterclockwise.
  std::vector<Point> corners() const {
    switch (kind) {
      case CellKind::square: return {{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}};
      case CellKind::upper: return {{x, y}, {x + 1, y + 1}, {x, y + 1}};
      default: return {{x, y}, {x + 1, y}, {x + 1, y + 1}};
    }
  }
};

struct Layer {
  int height = 0;  // a_j
  int width = 0;   // b_j
  friend bool operator==(const Layer&, const Layer&) = default;
};

struct RegionStats {
  int h1 = 0, h2 = 0, h3 = 0;
  int w1 = 0, w2 = 0;
  long c1 = 0, c2 = 0, c3 = 0;
  std::vector<Layer> layers;
  int octagon_type = 0;  // 0 when ell or ell' carries no triangle
  friend bool operator==(const RegionStats&, const RegionStats&) = default;
};

class Region {
 public:
  explicit Region(DiagonalSpec s) : spec_(std::move(s)) {
    validate(spec_);
    place_diagonals();
    trace_boundary();
    collect_cells();
  }

  const DiagonalSpec& spec() const { return spec_; }
  int top() const { return top_; }
  int ell() const { return ell_; }
  int ell_prime() const { return ell_prime_; }
  const std::vector<int>& diagonals() const { return diags_; }
  const std::vector<int>& middle_diagonals() const { return mids_; }
  bool is_diagonal(int o) const { return std::binary_search(diags_.begin(), diags_.end(), o); }

  // A..H in the order they are visited along the boundary.
  const std::array<Point, 8>& corners() const { return corners_; }
  const std::vector<Point>& ne_path() const { return ne_; }
  const std::vector<Point>& sw_path() const { return sw_; }
  std::vector<Point> polygon() const {
    std::vector<Point> p = ne_;
    p.insert(p.end(), sw_.rbegin(), sw_.rend());
    return p;
  }
  // Last step of the SW boundary is an east step.
  bool last_step_east() const {
    return sw_.size() >= 2 && sw_.back().x - sw_[sw_.size() - 2].x == 1;
  }

  const std::vector<Cell>& cells() const { return cells_; }
  int find(int x, int y, CellKind k) const {
    if (x < x0_ || x >= x0_ + nx_ || y < y0_ || y >= y0_ + ny_) return -1;
    int n = grid_[slot(x, y, k)];
    return n >= 0 && cells_[n].kind == k ? n : -1;
  }

  int color_at(int x, int y, CellKind k) const {
    int o = y - x;
    int above = static_cast<int>(diags_.end() - std::upper_bound(diags_.begin(), diags_.end(), o));
    int base = o + above + (k == CellKind::lower ? 1 : 0);
    return (((base - flip_) % 2) + 2) % 2;
  }

  Part part_of(int row_key) const {
    if (row_key > 2 * ell_) return Part::upper;
    if (row_key > 2 * ell_prime_) return Part::middle;
    return Part::lower;
  }

 private:
  DiagonalSpec spec_;
  int top_ = 0, ell_ = 0, ell_prime_ = 0, flip_ = 0;
  std::vector<int> diags_, mids_;
  std::array<Point, 8> corners_{};
  std::vector<Point> ne_, sw_;
  std::vector<Cell> cells_;
  int x0_ = 0, y0_ = 0, nx_ = 0, ny_ = 0;
  std::vector<int> grid_;

  void place_diagonals() {
    int l2 = std::accumulate(spec_.lower_gaps.begin(), spec_.lower_gaps.end(), 0);
    int l1 = l2 + std::accumulate(spec_.middle_gaps.begin(), spec_.middle_gaps.end(), 0);
    int t = l1 + std::accumulate(spec_.upper_gaps.begin(), spec_.upper_gaps.end(), 0);
    top_ = t, ell_ = l1, ell_prime_ = l2, flip_ = (t + 1) % 2;
    std::vector<int> all{t};
    for (int c = t; int g : spec_.upper_gaps) all.push_back(c -= g);
    mids_ = {l1};
    for (int c = l1; int g : spec_.middle_gaps) mids_.push_back(c -= g);
    all.insert(all.end(), mids_.begin(), mids_.end());
    all.push_back(0);
    for (int c = 0; int g : spec_.lower_gaps) all.push_back(c += g);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    diags_ = all;
  }

  // The region of square (i,j) touching its east or west edge.
  int color_east(int i, int j) const {
    return color_at(i, j, is_diagonal(j - i) ? CellKind::lower : CellKind::square);
  }
  int color_west(int i, int j) const {
    return color_at(i, j, is_diagonal(j - i) ? CellKind::upper : CellKind::square);
  }

  void walk(Point& p, int steps, bool black_on_right) {
    for (int s = 0; s < steps; ++s) {
      int c = black_on_right ? color_east(p.x - 1, p.y - 1) : color_west(p.x, p.y - 1);
      if (c == 1)
        --p.y;
      else
        ++p.x;
      ne_.push_back(p);
    }
  }

  void trace_boundary() {
    Point p{0, top_};
    ne_ = {p};
    walk(p, top_ - ell_, true);
    Point b = p;
    walk(p, ell_ - ell_prime_, false);
    Point c = p;
    walk(p, ell_prime_, true);
    Point d = p;
    int s = top_ - spec_.a;
    auto refl = [s](Point q) { return Point{s - q.y, s - q.x}; };
    sw_.clear();
    for (auto q : ne_) sw_.push_back(refl(q));
    corners_ = {ne_.front(), b, c, d, refl(d), refl(c), refl(b), refl(ne_.front())};
  }

  void collect_cells() {
    auto poly = polygon();
    int xmin = poly[0].x, xmax = xmin, ymin = poly[0].y, ymax = ymin;
    for (auto q : poly) {
      xmin = std::min(xmin, q.x), xmax = std::max(xmax, q.x);
      ymin = std::min(ymin, q.y), ymax = std::max(ymax, q.y);
    }
    x0_ = xmin - 1, y0_ = ymin - 1;
    nx_ = xmax - xmin + 2, ny_ = ymax - ymin + 2;
    grid_.assign(static_cast<size_t>(nx_) * ny_ * 2, -1);
    // Non-horizontal edges bucketed by the unit rows they span.
    std::vector<std::vector<std::pair<Point, Point>>> rows(ny_);
    for (size_t k = 0; k < poly.size(); ++k) {
      Point p = poly[k], q = poly[(k + 1) % poly.size()];
      if (p.y == q.y) continue;
      for (int j = std::min(p.y, q.y); j < std::max(p.y, q.y); ++j) rows[j - y0_].push_back({p, q});
    }
    std::vector<long> cross;
    for (int j = y0_; j < y0_ + ny_; ++j) {
      const auto& es = rows[j - y0_];
      if (es.empty()) continue;
      for (int sub : {2, 3, 4}) {
        long y6 = 6L * j + sub;
        cross.clear();
        // crossings in units of 1/6; never equal to a centroid abscissa
        for (auto [p, q] : es) cross.push_back(6L * p.x + (y6 - 6L * p.y) * (q.x - p.x) / (q.y - p.y));
        std::sort(cross.begin(), cross.end());
        for (int i = x0_; i < x0_ + nx_; ++i) {
          bool cut = is_diagonal(j - i);
          CellKind k;
          if (sub == 3) {
            if (cut) continue;
            k = CellKind::square;
          } else {
            if (!cut) continue;
            k = sub == 4 ? CellKind::upper : CellKind::lower;
          }
          Cell c{i, j, k};
          long cx = c.centroid6().x;
          auto above = cross.end() - std::upper_bound(cross.begin(), cross.end(), cx);
          if (above % 2 == 0) continue;
          c.color = color_at(i, j, k);
          c.part = part_of(c.row_key());
          c.regular = k == CellKind::square || !c.toward_ell_prime();
          cells_.push_back(c);
        }
      }
    }
    std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
      return std::tie(a.x, a.y, a.kind) < std::tie(b.x, b.y, b.kind);
    });
    for (size_t n = 0; n < cells_.size(); ++n) grid_[slot(cells_[n].x, cells_[n].y, cells_[n].kind)] = static_cast<int>(n);
  }

  size_t slot(int x, int y, CellKind k) const {
    return (static_cast<size_t>(x - x0_) * ny_ + (y - y0_)) * 2 + (k == CellKind::lower ? 1 : 0);
  }
};

inline Region build_region(const DiagonalSpec& s) { return Region(s); }

// 1 if the triangles right above ell (resp. right below ell') are black.
inline int classify_type(const Region& r) {
  int above = -1, below = -1;
  for (const auto& c : r.cells()) {
    if (c.kind == CellKind::upper && c.offset() == r.ell()) above = c.color;
    if (c.kind == CellKind::lower && c.offset() == r.ell_prime()) below = c.color;
  }
  if (above < 0 || below < 0) return 0;
  if (above == 1 && below == 1) return 1;
  if (above == 0 && below == 0) return 2;
  return above == 1 ? 3 : 4;
}

inline std::vector<Layer> middle_layers(const Region& r) {
  const auto& mids = r.middle_diagonals();
  std::vector<Layer> out;
  for (size_t j = 0; j + 1 < mids.size(); ++j) {
    int hi = mids[j], lo = mids[j + 1];
    std::map<int, std::pair<int, int>> rows;  // row key -> (color, cells)
    for (const auto& c : r.cells()) {
      int o = c.offset();
      bool in = (c.kind == CellKind::square && lo < o && o < hi) ||
                (c.kind == CellKind::upper && o == lo);
      if (!in) continue;
      auto& e = rows[c.row_key()];
      e.first = c.color;
      ++e.second;
    }
    Layer L;
    int black_width = -1;
    for (const auto& [key, cw] : rows) {
      if (cw.first == 0) {
        ++L.height;
        L.width = cw.second;
      } else {
        black_width = cw.second;
      }
    }
    if (L.height == 0 && black_width >= 0) L.width = black_width + 1;
    out.push_back(L);
  }
  return out;
}

inline RegionStats region_stats(const Region& r) {
  RegionStats s;
  std::array<std::map<int, int>, 3> rows;
  std::array<long, 3> counts{};
  const int wanted[3] = {1, 0, 1};
  for (const auto& c : r.cells()) {
    int p = static_cast<int>(c.part);
    if (!c.regular || c.color != wanted[p]) continue;
    ++counts[p];
    ++rows[p][c.row_key()];
  }
  s.h1 = static_cast<int>(rows[0].size());
  s.h2 = static_cast<int>(rows[1].size());
  s.h3 = static_cast<int>(rows[2].size());
  s.c1 = counts[0], s.c2 = counts[1], s.c3 = counts[2];
  const auto& k = r.corners();
  s.w1 = k[1].x - k[6].x;
  s.w2 = k[2].x - k[5].x;
  s.layers = middle_layers(r);
  s.octagon_type = classify_type(r);
  return s;
}

inline bool balancing_holds(const RegionStats& s) { return s.h1 + s.h3 == s.w1 + s.h2; }

inline std::pair<long, long> color_totals(const Region& r) {
  long black = 0;
  for (const auto& c : r.cells()) black += c.color;
  return {black, static_cast<long>(r.cells().size()) - black};
}

inline nlohmann::ordered_json to_json(const RegionStats& s) {
  nlohmann::ordered_json j;
  j["h1"] = s.h1, j["h2"] = s.h2, j["h3"] = s.h3;
  j["w1"] = s.w1, j["w2"] = s.w2;
  j["c1"] = s.c1, j["c2"] = s.c2, j["c3"] = s.c3;
  j["layers"] = nlohmann::ordered_json::array();
  for (const auto& L : s.layers) j["layers"].push_back({L.height, L.width});
  j["type"] = s.octagon_type;
  return j;
}

}  // namespace qoct
