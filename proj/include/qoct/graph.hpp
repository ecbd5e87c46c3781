#pragma once
// Weighted bipartite graphs with named boundary lists, plus the graph
// families and combinators used to rewrite dual graphs of regions.

#include "qoct/exact.hpp"
#include "qoct/region.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include <json.hpp>

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qoct {

struct Edge {
  int u = 0, v = 0;
  Rational w = 1;
};

using Rotation = std::vector<std::vector<int>>;  // per vertex, edge ids in cyclic order

class PMGraph {
 public:
  int add_vertex(int cls) {
    if (cls != 0 && cls != 1) throw std::invalid_argument("class must be 0 or 1");
    cls_.push_back(cls);
    if (!pos_.empty()) pos_.push_back({0.0, 0.0});
    rotation_.reset();
    return static_cast<int>(cls_.size()) - 1;
  }
  int add_vertex(int cls, double x, double y) {
    if (pos_.empty() && !cls_.empty()) throw std::logic_error("positions must be given for all vertices");
    int v = add_vertex(cls);
    if (pos_.size() < cls_.size()) pos_.resize(cls_.size());
    pos_[v] = {x, y};
    return v;
  }

  // Parallel edges are merged by adding weights.
  int add_edge(int u, int v, const Rational& w = 1) {
    check_vertex(u), check_vertex(v);
    if (cls_[u] == cls_[v]) throw std::invalid_argument("edge joins vertices of the same class");
    auto key = std::minmax(u, v);
    auto it = eidx_.find(key);
    if (it != eidx_.end()) {
      edges_[it->second].w += w;
      return it->second;
    }
    edges_.push_back({u, v, w});
    int e = static_cast<int>(edges_.size()) - 1;
    eidx_[key] = e;
    rotation_.reset();
    return e;
  }

  int num_vertices() const { return static_cast<int>(cls_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int cls(int v) const { return cls_.at(v); }
  const std::vector<int>& classes() const { return cls_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_between(int u, int v) const {
    auto it = eidx_.find(std::minmax(u, v));
    return it == eidx_.end() ? -1 : it->second;
  }
  void set_weight(int e, const Rational& w) { edges_.at(e).w = w; }

  std::array<int, 2> class_sizes() const {
    std::array<int, 2> s{0, 0};
    for (int c : cls_) ++s[c];
    return s;
  }

  // adj[v] = (neighbour, edge id), in increasing neighbour order.
  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(cls_.size());
    for (int e = 0; e < num_edges(); ++e) {
      adj[edges_[e].u].push_back({edges_[e].v, e});
      adj[edges_[e].v].push_back({edges_[e].u, e});
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }
  int degree(int v) const {
    int d = 0;
    for (const auto& e : edges_) d += (e.u == v) + (e.v == v);
    return d;
  }

  void set_list(const std::string& name, std::vector<int> vs) {
    std::set<int> seen;
    for (int v : vs) {
      check_vertex(v);
      if (!seen.insert(v).second) throw std::invalid_argument("boundary list repeats a vertex");
    }
    lists_[name] = std::move(vs);
  }
  const std::vector<int>& list(const std::string& name) const {
    auto it = lists_.find(name);
    if (it == lists_.end()) throw std::out_of_range("no boundary list named " + name);
    return it->second;
  }
  bool has_list(const std::string& name) const { return lists_.count(name) != 0; }
  const std::map<std::string, std::vector<int>>& lists() const { return lists_; }

  bool has_positions() const { return !pos_.empty() && pos_.size() == cls_.size(); }
  const std::vector<std::array<double, 2>>& positions() const { return pos_; }

  const std::optional<Rotation>& rotation() const { return rotation_; }
  void set_rotation(Rotation r) { rotation_ = std::move(r); }

  // Cyclic order of edges around each vertex by angle of the straight-line drawing.
  void rotation_from_positions() {
    if (!has_positions()) throw std::logic_error("graph has no positions");
    Rotation rot(cls_.size());
    auto adj = adjacency();
    for (size_t v = 0; v < cls_.size(); ++v) {
      std::vector<std::pair<double, int>> around;
      for (auto [u, e] : adj[v])
        around.push_back({std::atan2(pos_[u][1] - pos_[v][1], pos_[u][0] - pos_[v][0]), e});
      std::sort(around.begin(), around.end());
      for (auto& [ang, e] : around) rot[v].push_back(e);
    }
    rotation_ = std::move(rot);
  }

 private:
  std::vector<int> cls_;
  std::vector<Edge> edges_;
  std::map<std::pair<int, int>, int> eidx_;
  std::map<std::string, std::vector<int>> lists_;
  std::vector<std::array<double, 2>> pos_;
  std::optional<Rotation> rotation_;

  void check_vertex(int v) const {
    if (v < 0 || v >= num_vertices()) throw std::out_of_range("vertex out of range");
  }
};

// ---------------------------------------------------------------- embedding

inline std::vector<int> component_ids(const PMGraph& g, int* count = nullptr) {
  auto adj = g.adjacency();
  std::vector<int> comp(g.num_vertices(), -1);
  int c = 0;
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [u, e] : adj[v])
        if (comp[u] < 0) comp[u] = c, stack.push_back(u);
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

// Faces of a rotation system as cycles of darts.  Dart 2e runs u->v, 2e+1 runs v->u.
inline std::vector<std::vector<int>> trace_faces(const PMGraph& g, const Rotation& rot) {
  const auto& E = g.edges();
  int nd = 2 * g.num_edges();
  std::vector<int> where(nd, -1);  // dart leaving vertex -> position in rot of its tail
  for (int v = 0; v < g.num_vertices(); ++v)
    for (size_t k = 0; k < rot[v].size(); ++k) {
      int e = rot[v][k];
      where[2 * e + (E[e].u == v ? 0 : 1)] = static_cast<int>(k);
    }
  std::vector<int> seen(nd, 0);
  std::vector<std::vector<int>> faces;
  for (int d0 = 0; d0 < nd; ++d0) {
    if (seen[d0]) continue;
    std::vector<int> face;
    int d = d0;
    while (!seen[d]) {
      seen[d] = 1;
      face.push_back(d);
      int e = d / 2;
      int head = (d % 2 == 0) ? E[e].v : E[e].u;
      int back = 2 * e + (d % 2 == 0 ? 1 : 0);  // head -> tail
      const auto& r = rot[head];
      int k = where[back];
      int e2 = r[(k + 1) % r.size()];
      d = 2 * e2 + (E[e2].u == head ? 0 : 1);
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

// Euler's formula V - E + F = 2 on every connected component.
inline bool euler_check(const PMGraph& g, const Rotation& rot) {
  if (static_cast<int>(rot.size()) != g.num_vertices()) return false;
  std::vector<int> uses(g.num_edges(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int e : rot[v]) {
      if (e < 0 || e >= g.num_edges()) return false;
      const auto& ed = g.edges()[e];
      if (ed.u != v && ed.v != v) return false;
      ++uses[e];
    }
  }
  for (int u : uses)
    if (u != 2) return false;
  int nc = 0;
  auto comp = component_ids(g, &nc);
  std::vector<long> chi(nc, 0);
  for (int v = 0; v < g.num_vertices(); ++v) chi[comp[v]] += 1;
  for (const auto& e : g.edges()) chi[comp[e.u]] -= 1;
  for (const auto& f : trace_faces(g, rot)) chi[comp[g.edges()[f[0] / 2].u]] += 1;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (rot[v].empty()) chi[comp[v]] += 1;  // isolated vertex bounds one face
  for (long x : chi)
    if (x != 2) return false;
  return true;
}

// Planar rotation system from the Boyer-Myrvold test, or nothing if nonplanar.
inline std::optional<Rotation> planar_rotation(const PMGraph& g) {
  using namespace boost;
  using BG = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>,
                            property<edge_index_t, int>>;
  BG bg(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e) add_edge(g.edges()[e].u, g.edges()[e].v, e, bg);
  using EdgeT = graph_traits<BG>::edge_descriptor;
  std::vector<std::vector<EdgeT>> emb(num_vertices(bg));
  bool ok = boyer_myrvold_planarity_test(
      boyer_myrvold_params::graph = bg,
      boyer_myrvold_params::embedding =
          make_iterator_property_map(emb.begin(), get(vertex_index, bg)));
  if (!ok) return std::nullopt;
  Rotation rot(g.num_vertices());
  auto eidx = get(edge_index, bg);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (const auto& ed : emb[v]) rot[v].push_back(eidx[ed]);
  return rot;
}

// Rotation stored on the graph if it passes the Euler check, else a fresh one.
inline std::optional<Rotation> embedding_of(const PMGraph& g) {
  if (g.rotation() && euler_check(g, *g.rotation())) return g.rotation();
  auto r = planar_rotation(g);
  if (r && euler_check(g, *r)) return r;
  return std::nullopt;
}

// ---------------------------------------------------------------- builders

namespace detail {
// Board of `rows` x `cols` unit squares, keeping squares with (r+c) odd
// (white) or even (black); edges join diagonal neighbours.
inline PMGraph board(int rows, int cols, bool white) {
  PMGraph g;
  std::map<std::pair<int, int>, int> id;
  std::vector<int> top, bottom;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (((r + c) % 2 == 1) != white) continue;
      int v = g.add_vertex(r % 2, c, -r);
      id[{r, c}] = v;
      if (r == 0) top.push_back(v);
      if (r == rows - 1) bottom.push_back(v);
    }
  for (auto [rc, v] : id) {
    auto [r, c] = rc;
    for (int dc : {-1, 1}) {
      auto it = id.find({r + 1, c + dc});
      if (it != id.end()) g.add_edge(v, it->second);
    }
  }
  g.set_list("top", top);
  g.set_list("bottom", bottom);
  g.rotation_from_positions();
  return g;
}
}  // namespace detail

inline PMGraph aztec_rectangle(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("aztec_rectangle needs m,n >= 1");
  return detail::board(2 * m + 1, 2 * n + 1, true);
}

inline PMGraph odd_aztec_rectangle(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("odd_aztec_rectangle needs m,n >= 1");
  return detail::board(2 * m + 1, 2 * n + 1, false);
}

// AR_{m-1/2,n}: the board of AR_{m,n} without its bottom row.
inline PMGraph baseless_aztec_rectangle(int m, int n) {
  if (m < 1 || n < 0) throw std::invalid_argument("baseless_aztec_rectangle needs m >= 1, n >= 0");
  return detail::board(2 * m, 2 * n + 1, true);
}

// Lozenge semihexagon with a rows of triangles; the top row has a+b
// down-pointing triangles, listed left to right as "top".
inline PMGraph semihexagon(int a, int b) {
  if (a < 1 || b < 0) throw std::invalid_argument("semihexagon needs a >= 1, b >= 0");
  PMGraph g;
  const double h = std::sqrt(3.0) / 2;
  std::vector<std::vector<int>> row(a + 1);
  for (int i = 1; i <= a; ++i) {
    int len = a + b - i + 1;
    for (int k = 0; k < 2 * len - 1; ++k) {
      double x = 0.5 * (i - 1) + 0.5 * (k + 1);
      double y = -h * (i - 1) - (k % 2 == 0 ? h / 3 : 2 * h / 3);
      row[i].push_back(g.add_vertex(k % 2, x, y));
    }
  }
  for (int i = 1; i <= a; ++i) {
    for (size_t k = 0; k + 1 < row[i].size(); ++k) g.add_edge(row[i][k], row[i][k + 1]);
    if (i < a)
      for (int j = 0; 2 * j + 1 < static_cast<int>(row[i].size()); ++j)
        g.add_edge(row[i][2 * j + 1], row[i + 1][2 * j]);
  }
  std::vector<int> top;
  for (size_t k = 0; k < row[1].size(); k += 2) top.push_back(row[1][k]);
  g.set_list("top", top);
  g.rotation_from_positions();
  return g;
}

// One vertex per cell, one edge per shared cell side; class = cell colour.
inline PMGraph dual_graph(const Region& r) {
  PMGraph g;
  const auto& cells = r.cells();
  std::map<std::array<int, 4>, std::vector<int>> sides;
  for (size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    auto p = c.centroid6();
    g.add_vertex(c.color, p.x / 6.0, p.y / 6.0);
    auto k = c.corners();
    for (size_t s = 0; s < k.size(); ++s) {
      Point a = k[s], b = k[(s + 1) % k.size()];
      if (std::tie(b.x, b.y) < std::tie(a.x, a.y)) std::swap(a, b);
      sides[{a.x, a.y, b.x, b.y}].push_back(static_cast<int>(i));
    }
  }
  for (const auto& [seg, who] : sides)
    if (who.size() == 2) g.add_edge(who[0], who[1]);
  g.rotation_from_positions();
  return g;
}

// ---------------------------------------------------------------- combinators

// Induced subgraph on the vertices not in `drop`; indices are compacted in order.
inline PMGraph remove_vertex_set(const PMGraph& g, const std::set<int>& drop,
                                 std::vector<int>* old_to_new = nullptr) {
  std::vector<int> map(g.num_vertices(), -1);
  PMGraph h;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (drop.count(v)) continue;
    map[v] = g.has_positions() ? h.add_vertex(g.cls(v), g.positions()[v][0], g.positions()[v][1])
                               : h.add_vertex(g.cls(v));
  }
  for (const auto& e : g.edges())
    if (map[e.u] >= 0 && map[e.v] >= 0) h.add_edge(map[e.u], map[e.v], e.w);
  for (const auto& [name, vs] : g.lists()) {
    std::vector<int> kept;
    for (int v : vs)
      if (map[v] >= 0) kept.push_back(map[v]);
    h.set_list(name, kept);
  }
  if (g.rotation() && h.has_positions()) h.rotation_from_positions();
  if (old_to_new) *old_to_new = map;
  return h;
}

// Removes the vertices at 1-based `positions` of the named list.
inline PMGraph remove_vertices(const PMGraph& g, const std::string& list_name,
                               const std::set<int>& positions) {
  const auto& lst = g.list(list_name);
  std::set<int> drop;
  for (int p : positions) {
    if (p < 1 || p > static_cast<int>(lst.size()))
      throw std::out_of_range("position " + std::to_string(p) + " outside list " + list_name);
    drop.insert(lst[p - 1]);
  }
  return remove_vertex_set(g, drop);
}

// Hangs a new pendant vertex off every vertex of `list_name`; the new ends form
// `new_list`.  Drawn positions are shifted by (0, dy).
inline PMGraph append_pendants(const PMGraph& g, const std::string& list_name,
                               const std::string& new_list, double dy) {
  PMGraph h = g;
  std::vector<int> ends;
  for (int v : g.list(list_name)) {
    int x = h.has_positions() ? h.add_vertex(1 - g.cls(v), g.positions()[v][0], g.positions()[v][1] + dy)
                              : h.add_vertex(1 - g.cls(v));
    h.add_edge(v, x);
    ends.push_back(x);
  }
  h.set_list(new_list, ends);
  if (h.has_positions()) h.rotation_from_positions();
  return h;
}

// Identifies h_list[i] with g_list[i].  g keeps its indices; the remaining
// vertices of h follow in their original order.  Each component of h has its
// classes flipped if needed to agree with g on the identified vertices.
inline PMGraph connected_sum(const PMGraph& g, const PMGraph& h, const std::vector<int>& g_list,
                             const std::vector<int>& h_list, std::vector<int>* h_to_sum = nullptr) {
  if (g_list.size() != h_list.size()) throw std::invalid_argument("connected_sum: list lengths differ");
  std::set<int> gs(g_list.begin(), g_list.end()), hs(h_list.begin(), h_list.end());
  if (gs.size() != g_list.size() || hs.size() != h_list.size())
    throw std::invalid_argument("connected_sum: repeated vertex in list");
  for (int v : g_list)
    if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("connected_sum: bad g vertex");
  for (int v : h_list)
    if (v < 0 || v >= h.num_vertices()) throw std::out_of_range("connected_sum: bad h vertex");

  int nc = 0;
  auto comp = component_ids(h, &nc);
  std::vector<int> flip(nc, -1);
  for (size_t i = 0; i < h_list.size(); ++i) {
    int want = g.cls(g_list[i]) != h.cls(h_list[i]) ? 1 : 0;
    int& f = flip[comp[h_list[i]]];
    if (f >= 0 && f != want) throw std::invalid_argument("connected_sum: class conflict");
    f = want;
  }
  PMGraph s;
  for (int v = 0; v < g.num_vertices(); ++v) s.add_vertex(g.cls(v));
  for (const auto& e : g.edges()) s.add_edge(e.u, e.v, e.w);
  std::vector<int> map(h.num_vertices(), -1);
  for (size_t i = 0; i < h_list.size(); ++i) map[h_list[i]] = g_list[i];
  for (int v = 0; v < h.num_vertices(); ++v)
    if (map[v] < 0) map[v] = s.add_vertex(flip[comp[v]] == 1 ? 1 - h.cls(v) : h.cls(v));
  for (const auto& e : h.edges()) {
    if (s.cls(map[e.u]) == s.cls(map[e.v])) throw std::invalid_argument("connected_sum: class conflict");
    s.add_edge(map[e.u], map[e.v], e.w);
  }
  for (const auto& [name, vs] : g.lists()) s.set_list(name, vs);
  if (h_to_sum) *h_to_sum = map;
  return s;
}

struct Pruned {
  PMGraph graph;
  Rational multiplier = 1;  // M(input) = multiplier * M(graph)
};

// Strips edges forced by degree-one vertices.  An isolated vertex makes the
// multiplier 0.
inline Pruned prune_forced_edges(const PMGraph& g) {
  std::vector<char> alive(g.num_vertices(), 1);
  auto adj = g.adjacency();
  std::vector<int> deg(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) deg[v] = static_cast<int>(adj[v].size());
  Rational mult = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (!alive[v]) continue;
      if (deg[v] == 0) {
        std::set<int> drop;
        for (int u = 0; u < g.num_vertices(); ++u)
          if (!alive[u]) drop.insert(u);
        return {remove_vertex_set(g, drop), Rational(0)};
      }
      if (deg[v] != 1) continue;
      for (auto [u, e] : adj[v]) {
        if (!alive[u]) continue;
        mult *= g.edges()[e].w;
        alive[v] = alive[u] = 0;
        for (int x : {u, v})
          for (auto [y, f] : adj[x])
            if (alive[y]) --deg[y];
        break;
      }
      changed = true;
    }
  }
  std::set<int> drop;
  for (int u = 0; u < g.num_vertices(); ++u)
    if (!alive[u]) drop.insert(u);
  return {remove_vertex_set(g, drop), mult};
}

inline nlohmann::ordered_json to_json(const PMGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (int v = 0; v < g.num_vertices(); ++v) j["vertices"].push_back({{"index", v}, {"class", g.cls(v)}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) {
    Rational w = e.w;
    j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"weight", numer(w).str() + "/" + denom(w).str()}});
  }
  j["lists"] = nlohmann::ordered_json::object();
  for (const auto& [name, vs] : g.lists()) j["lists"][name] = vs;
  return j;
}

inline PMGraph graph_from_json(const nlohmann::json& j) {
  PMGraph g;
  const auto& vs = j.at("vertices");
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].at("index").get<int>() != static_cast<int>(i)) throw std::invalid_argument("vertex indices must be 0..n-1 in order");
    g.add_vertex(vs[i].at("class").get<int>());
  }
  for (const auto& e : j.at("edges")) {
    Rational w = 1;
    if (e.contains("weight")) w = e["weight"].is_string() ? parse_rational(e["weight"].get<std::string>())
                                                          : Rational(e["weight"].get<long>());
    g.add_edge(e.at("u").get<int>(), e.at("v").get<int>(), w);
  }
  if (j.contains("lists"))
    for (const auto& [name, l] : j["lists"].items()) g.set_list(name, l.get<std::vector<int>>());
  return g;
}

}  // namespace qoct
