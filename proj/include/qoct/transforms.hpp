#pragma once
// Count-preserving graph rewrites.  Every rewrite returns the new graph and a
// multiplier k with M(before) = k * M(after).

#include "qoct/exact.hpp"
#include "qoct/graph.hpp"
#include "qoct/region.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoct {

struct Rewrite {
  PMGraph after;
  Rational multiplier = 1;
};

// A graph with the ordered vertex list along which it is glued to the rest.
struct Pattern {
  PMGraph graph;
  std::vector<int> seam;
};

inline std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Vertices of board row r (0 = top) of a graph built by the Aztec builders, left to right.
inline std::vector<int> row_vertices(const PMGraph& g, int r) {
  if (!g.has_positions()) throw std::logic_error("row_vertices: graph has no positions");
  std::vector<std::pair<double, int>> row;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.positions()[v][1] == -r) row.push_back({g.positions()[v][0], v});
  std::sort(row.begin(), row.end());
  std::vector<int> out;
  for (auto [x, v] : row) out.push_back(v);
  return out;
}

// Swaps the copy of P sitting at `site` in g (site[i] is the vertex of g playing
// P's vertex i) for R, glued along R.seam where P was glued along P.seam.
inline PMGraph replace_site(const PMGraph& g, const Pattern& P, const std::vector<int>& site, const Pattern& R) {
  const PMGraph& pg = P.graph;
  if (static_cast<int>(site.size()) != pg.num_vertices())
    throw std::invalid_argument("pattern mismatch: site size differs from pattern size");
  if (P.seam.size() != R.seam.size()) throw std::invalid_argument("pattern mismatch: seam lengths differ");
  std::set<int> used;
  for (int v : site) {
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("pattern mismatch: site vertex out of range");
    if (!used.insert(v).second) throw std::invalid_argument("pattern mismatch: repeated site vertex");
  }
  int nc = 0;
  auto comp = component_ids(pg, &nc);
  std::vector<int> flip(nc, -1);
  for (int i = 0; i < pg.num_vertices(); ++i) {
    int f = g.cls(site[i]) != pg.cls(i);
    if (flip[comp[i]] >= 0 && flip[comp[i]] != f) throw std::invalid_argument("pattern mismatch: classes");
    flip[comp[i]] = f;
  }
  std::set<int> seam(P.seam.begin(), P.seam.end());
  auto gadj = g.adjacency();
  for (int i = 0; i < pg.num_vertices(); ++i) {
    if (seam.count(i)) continue;
    if (static_cast<int>(gadj[site[i]].size()) != pg.degree(i))
      throw std::invalid_argument("pattern mismatch: interior vertex has outside neighbours");
  }
  std::map<std::pair<int, int>, Rational> strip;
  for (const auto& e : pg.edges()) {
    int ge = g.edge_between(site[e.u], site[e.v]);
    if (ge < 0) throw std::invalid_argument("pattern mismatch: missing edge");
    bool both_seam = seam.count(e.u) && seam.count(e.v);
    if (!both_seam && g.edges()[ge].w != e.w) throw std::invalid_argument("pattern mismatch: edge weight");
    strip[std::minmax(site[e.u], site[e.v])] += e.w;
  }
  std::set<int> drop;
  for (int i = 0; i < pg.num_vertices(); ++i)
    if (!seam.count(i)) drop.insert(site[i]);

  std::vector<int> map(g.num_vertices(), -1);
  PMGraph base;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!drop.count(v)) map[v] = base.add_vertex(g.cls(v));
  for (const auto& e : g.edges()) {
    if (map[e.u] < 0 || map[e.v] < 0) continue;
    Rational w = e.w;
    auto it = strip.find(std::minmax(e.u, e.v));
    if (it != strip.end()) w -= it->second;
    if (w != 0) base.add_edge(map[e.u], map[e.v], w);
  }
  for (const auto& [name, vs] : g.lists()) {
    std::vector<int> kept;
    for (int v : vs)
      if (map[v] >= 0) kept.push_back(map[v]);
    base.set_list(name, kept);
  }
  std::vector<int> glue;
  for (int i : P.seam) glue.push_back(map[site[i]]);
  return connected_sum(base, R.graph, glue, R.seam);
}

inline std::vector<int> identity_site(const Pattern& P, std::vector<int> site) {
  if (site.empty())
    for (int i = 0; i < P.graph.num_vertices(); ++i) site.push_back(i);
  return site;
}

// ---------------------------------------------------------------- local rules

// v becomes the path v' - x - v'' with v' adjacent to H and v'' to the rest of N(v).
// v' keeps index v; x and v'' are appended.
inline Rewrite vertex_split(const PMGraph& g, int v, const std::set<int>& H) {
  auto adj = g.adjacency();
  std::set<int> nbrs;
  for (auto [u, e] : adj.at(v)) nbrs.insert(u);
  for (int h : H)
    if (!nbrs.count(h)) throw std::invalid_argument("vertex_split: H is not a subset of N(v)");
  PMGraph out;
  for (int u = 0; u < g.num_vertices(); ++u) out.add_vertex(g.cls(u));
  int x = out.add_vertex(1 - g.cls(v));
  int v2 = out.add_vertex(g.cls(v));
  for (const auto& e : g.edges()) {
    if (e.u != v && e.v != v) {
      out.add_edge(e.u, e.v, e.w);
      continue;
    }
    int u = e.u == v ? e.v : e.u;
    out.add_edge(H.count(u) ? v : v2, u, e.w);
  }
  out.add_edge(v, x);
  out.add_edge(x, v2);
  for (const auto& [name, vs] : g.lists()) out.set_list(name, vs);
  return {out, 1};
}

// Multiplies every edge weight at v by t.
inline Rewrite star_scale(const PMGraph& g, int v, const Rational& t) {
  if (t <= 0) throw std::invalid_argument("star_scale: t must be positive");
  if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("star_scale: vertex out of range");
  PMGraph out = g;
  for (int e = 0; e < out.num_edges(); ++e)
    if (out.edges()[e].u == v || out.edges()[e].v == v) out.set_weight(e, out.edges()[e].w * t);
  return {out, 1 / t};
}

// Four-cycle a-b-c-d with unit legs a-A, b-B, c-C, d-D.
struct SpiderSite {
  std::array<int, 4> inner{};
  std::array<int, 4> outer{};
};

// Replaces the cycle by edges A-B, B-C, C-D, D-A of weights z, t, x, y over
// xz+yt, where x,y,z,t are the weights of ab, bc, cd, da.
inline Rewrite urban_renewal(const PMGraph& g, const SpiderSite& s) {
  std::set<int> all(s.inner.begin(), s.inner.end());
  all.insert(s.outer.begin(), s.outer.end());
  if (all.size() != 8) throw std::invalid_argument("urban_renewal: site vertices must be distinct");
  auto w = [&](int u, int v) {
    int e = g.edge_between(u, v);
    if (e < 0) throw std::invalid_argument("urban_renewal: missing spider edge");
    return g.edges()[e].w;
  };
  Rational cyc[4];
  for (int i = 0; i < 4; ++i) {
    cyc[i] = w(s.inner[i], s.inner[(i + 1) % 4]);
    if (w(s.inner[i], s.outer[i]) != 1) throw std::invalid_argument("urban_renewal: legs must have weight 1");
    if (g.degree(s.inner[i]) != 3)
      throw std::invalid_argument("urban_renewal: inner vertex has neighbours outside the spider");
  }
  const Rational &x = cyc[0], &y = cyc[1], &z = cyc[2], &t = cyc[3];
  Rational delta = x * z + y * t;
  if (delta == 0) throw std::invalid_argument("urban_renewal: xz+yt = 0");
  std::set<int> drop(s.inner.begin(), s.inner.end());
  std::vector<int> map;
  PMGraph out = remove_vertex_set(g, drop, &map);
  const auto& o = s.outer;
  out.add_edge(map[o[0]], map[o[1]], z / delta);
  out.add_edge(map[o[1]], map[o[2]], t / delta);
  out.add_edge(map[o[2]], map[o[3]], x / delta);
  out.add_edge(map[o[3]], map[o[0]], y / delta);
  return {out, delta};
}

// ---------------------------------------------------------------- Aztec rules

// AR_{p,q} with a pendant edge under each bottom vertex; glued along the pendant ends.
inline Pattern pattern_t1(int p, int q) {
  auto g = append_pendants(aztec_rectangle(p, q), "bottom", "bottom_ends", -0.5);
  return {g, g.list("bottom_ends")};
}

// AR_{p,q} with pendant edges on the top and the bottom row.
inline Pattern pattern_otrans_a(int p, int q) {
  auto g = append_pendants(aztec_rectangle(p, q), "top", "top_ends", 0.5);
  g = append_pendants(g, "bottom", "bottom_ends", -0.5);
  return {g, concat(g.list("top_ends"), g.list("bottom_ends"))};
}

inline Pattern pattern_otrans_b(int p, int q) {
  auto g = aztec_rectangle(p, q);
  return {g, concat(g.list("top"), g.list("bottom"))};
}

inline Pattern pattern_t6(int p, int q) {
  auto g = append_pendants(aztec_rectangle(p, q), "bottom", "bottom_ends", -0.5);
  return {g, concat(g.list("top"), g.list("bottom_ends"))};
}

inline Rewrite lemma_T1(const PMGraph& g, int p, int q, std::vector<int> site = {}) {
  if (p < 1 || q < 1) throw std::invalid_argument("lemma_T1: need p,q >= 1");
  auto P = pattern_t1(p, q);
  auto r = baseless_aztec_rectangle(p, q - 1);
  return {replace_site(g, P, identity_site(P, site), {r, r.list("bottom")}), pow2(p)};
}

inline Rewrite otrans_a(const PMGraph& g, int p, int q, std::vector<int> site = {}) {
  if (p < 1 || q < 2) throw std::invalid_argument("otrans_a: need p >= 1, q >= 2");
  auto P = pattern_otrans_a(p, q);
  auto r = odd_aztec_rectangle(p, q - 1);
  return {replace_site(g, P, identity_site(P, site), {r, concat(r.list("top"), r.list("bottom"))}), pow2(p)};
}

inline Rewrite otrans_b(const PMGraph& g, int p, int q, std::vector<int> site = {}) {
  if (p < 1 || q < 2) throw std::invalid_argument("otrans_b: need p >= 1, q >= 2");
  auto P = pattern_otrans_b(p, q);
  auto r = append_pendants(odd_aztec_rectangle(p, q - 1), "top", "top_ends", 0.5);
  r = append_pendants(r, "bottom", "bottom_ends", -0.5);
  return {replace_site(g, P, identity_site(P, site), {r, concat(r.list("top_ends"), r.list("bottom_ends"))}),
          pow2(p)};
}

inline Rewrite lemma_T6(const PMGraph& g, int p, int q, std::vector<int> site = {}) {
  if (p < 1 || q < 2) throw std::invalid_argument("lemma_T6: need p >= 1, q >= 2");
  auto P = pattern_t6(p, q);
  auto r = append_pendants(odd_aztec_rectangle(p, q - 1), "top", "top_ends", 0.5);
  return {replace_site(g, P, identity_site(P, site), {r, concat(r.list("top_ends"), r.list("bottom"))}),
          pow2(p)};
}

// ---------------------------------------------------------------- Douglas parts

enum class BottomColor { white, black };

// Dual graph of the part above ell of O_a(d; 1; 1), with the triangles along
// ell listed left to right as "bottom" and the holes removed from that list.
struct DouglasPart {
  Pattern pattern;
  int h = 0, w = 0;
  long regular_black = 0;
  BottomColor bottom = BottomColor::white;
};

inline DouglasPart douglas_part(int a, const std::vector<int>& d, const std::set<int>& holes) {
  Region r({a, d, {1}, {1}});
  auto st = region_stats(r);
  std::set<int> drop;
  auto full = dual_graph(r);
  std::vector<std::pair<int, int>> bottom;
  for (size_t i = 0; i < r.cells().size(); ++i) {
    const auto& c = r.cells()[i];
    if (c.part != Part::upper) {
      drop.insert(static_cast<int>(i));
      continue;
    }
    if (c.kind == CellKind::upper && c.offset() == r.ell()) bottom.push_back({c.x, static_cast<int>(i)});
  }
  std::sort(bottom.begin(), bottom.end());
  DouglasPart out;
  out.h = st.h1, out.w = st.w1, out.regular_black = st.c1;
  if (static_cast<int>(bottom.size()) != st.w1) throw std::logic_error("douglas_part: bottom row length differs from width");
  if (bottom.empty()) throw std::invalid_argument("douglas_part: region has width 0");
  out.bottom = r.cells()[bottom[0].second].color == 1 ? BottomColor::black : BottomColor::white;
  std::vector<int> bl;
  for (auto [x, i] : bottom) bl.push_back(i);
  full.set_list("bottom", bl);
  for (int p : holes) {
    if (p < 1 || p > out.w) throw std::out_of_range("douglas_part: hole index out of range");
    drop.insert(bl[p - 1]);
  }
  auto g = remove_vertex_set(full, drop);
  out.pattern = {g, g.list("bottom")};
  return out;
}

// Replaces the Douglas part glued at `site` by AR_{h,w} (white bottom row) or
// AR_{h-1/2,w-1} (black bottom row) carrying the same holes.
inline Rewrite composite_transform(const PMGraph& g, int a, const std::vector<int>& d, const std::set<int>& holes,
                                   std::optional<BottomColor> variant = std::nullopt, std::vector<int> site = {}) {
  auto D = douglas_part(a, d, holes);
  if (variant && *variant != D.bottom) throw std::invalid_argument("composite_transform: variant does not match bottom row");
  PMGraph r;
  long exponent = 0;
  if (D.bottom == BottomColor::white) {
    r = aztec_rectangle(D.h, D.w);
    exponent = D.regular_black - static_cast<long>(D.h) * (D.w + 1);
  } else {
    r = baseless_aztec_rectangle(D.h, D.w - 1);
    exponent = D.regular_black - static_cast<long>(D.h) * D.w;
  }
  if (!holes.empty()) r = remove_vertices(r, "bottom", holes);
  Pattern R{r, r.list("bottom")};
  return {replace_site(g, D.pattern, identity_site(D.pattern, site), R), pow2(exponent)};
}

// ---------------------------------------------------------------- hexagon pairs

struct HexagonPair {
  PMGraph sum;     // two dented semihexagons glued along their top rows
  PMGraph before;  // sum with forced edges pruned
  Rational prune_multiplier = 1;
  Rewrite rewrite;  // before -> holed Aztec rectangle
};

// Semihexagon (a,b) with the first c and last d top vertices removed.
inline PMGraph dented_semihexagon(int a, int b, int c, int d) {
  std::set<int> rm;
  for (int i = 1; i <= c; ++i) rm.insert(i);
  for (int i = a + b - d + 1; i <= a + b; ++i) rm.insert(i);
  return remove_vertices(semihexagon(a, b), "top", rm);
}

inline HexagonPair hexagon_pair_reduce(int a, int b, int c, int d, int a2, int b2) {
  if (a < 1 || b < 1 || a2 < 1 || b2 < 1 || c < 0 || d < 0)
    throw std::invalid_argument("hexagon_pair_reduce: parameters out of range");
  if (a + b != a2 + b2) throw std::invalid_argument("hexagon_pair_reduce: need a+b = a'+b'");
  if (c >= std::min(a, a2) || d >= std::min(a, a2))
    throw std::invalid_argument("hexagon_pair_reduce: need c,d < min(a,a')");
  auto s1 = dented_semihexagon(a, b, c, d);
  auto s2 = dented_semihexagon(a2, b2, c, d);
  HexagonPair out;
  out.sum = connected_sum(s1, s2, s1.list("top"), s2.list("top"));
  auto pr = prune_forced_edges(out.sum);
  out.before = pr.graph;
  out.prune_multiplier = pr.multiplier;
  int M = a + a2 - 1;
  auto ar = aztec_rectangle(M, a + b - 1);
  auto row = row_vertices(ar, M + (a - a2));
  ar.set_list("holes_row", row);
  std::set<int> A;
  for (int i = 1; i <= c; ++i) A.insert(i);
  for (int i = a + b - d + 1; i <= a + b; ++i) A.insert(i);
  out.rewrite.after = remove_vertices(ar, "holes_row", A);
  out.rewrite.multiplier = pow2(-choose2(a) - choose2(a2));
  return out;
}

// AR_{2m+d-1,n} with its long row d below the middle keeping only the
// 1-based positions in `kept`.
inline PMGraph holed_aztec_rectangle(int m, int n, int d, const std::vector<int>& kept) {
  int M = 2 * m + d - 1;
  auto ar = aztec_rectangle(M, n);
  auto row = row_vertices(ar, M + d);
  ar.set_list("holes_row", row);
  std::set<int> keep(kept.begin(), kept.end()), A;
  for (int p = 1; p <= n + 1; ++p)
    if (!keep.count(p)) A.insert(p);
  return remove_vertices(ar, "holes_row", A);
}

}  // namespace qoct
