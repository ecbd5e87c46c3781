#pragma once
// Weighted perfect-matching sums M(G), computed three independent ways.

#include "qoct/exact.hpp"
#include "qoct/graph.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/cuthill_mckee_ordering.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qoct {

enum class Backend { brute, permanent, fkt };

inline std::string to_string(Backend b) {
  switch (b) {
    case Backend::brute: return "brute";
    case Backend::permanent: return "permanent";
    default: return "fkt";
  }
}

namespace detail {

// Integer weights W_e = L * w_e with L the lcm of all denominators.
inline std::vector<Integer> scaled_weights(const PMGraph& g, Integer& L) {
  std::vector<Rational> ws;
  for (const auto& e : g.edges()) ws.push_back(e.w);
  L = lcm_of_denominators(ws);
  std::vector<Integer> out;
  for (const auto& w : ws) out.push_back(numer(w * Rational(L)));
  return out;
}

inline Rational unscale(const Integer& value, const Integer& L, int pairs) {
  return Rational(value, ipow(L, static_cast<unsigned>(pairs)));
}

inline std::vector<int> cuthill_mckee(const PMGraph& g) {
  using namespace boost;
  using BG = adjacency_list<vecS, vecS, undirectedS,
                            property<vertex_color_t, default_color_type, property<vertex_degree_t, int>>>;
  BG bg(g.num_vertices());
  for (const auto& e : g.edges()) add_edge(e.u, e.v, bg);
  std::vector<graph_traits<BG>::vertex_descriptor> order(g.num_vertices());
  cuthill_mckee_ordering(bg, order.rbegin(), get(vertex_color, bg), make_degree_map(bg));
  return {order.begin(), order.end()};
}

struct Mask256 {
  std::uint64_t w[4] = {0, 0, 0, 0};
  bool test(int k) const { return (w[k >> 6] >> (k & 63)) & 1u; }
  void set(int k) { w[k >> 6] |= std::uint64_t{1} << (k & 63); }
  void shift() {
    for (int i = 0; i < 4; ++i) w[i] = (w[i] >> 1) | (i < 3 ? w[i + 1] << 63 : 0);
  }
  bool operator==(const Mask256& o) const {
    return w[0] == o.w[0] && w[1] == o.w[1] && w[2] == o.w[2] && w[3] == o.w[3];
  }
};
struct Mask256Hash {
  size_t operator()(const Mask256& m) const {
    std::uint64_t h = m.w[0] * 0x9E3779B97F4A7C15ull;
    for (int i = 1; i < 4; ++i) h = (h ^ m.w[i]) * 0x9E3779B97F4A7C15ull;
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

struct MaskBits {
  static bool test(std::uint64_t m, int k) { return (m >> k) & 1u; }
  static void set(std::uint64_t& m, int k) { m |= std::uint64_t{1} << k; }
  static void shift(std::uint64_t& m) { m >>= 1; }
  static bool test(const Mask256& m, int k) { return m.test(k); }
  static void set(Mask256& m, int k) { m.set(k); }
  static void shift(Mask256& m) { m.shift(); }
};

struct Overflow {};

inline void add_to(unsigned __int128& a, unsigned __int128 b) {
  if (__builtin_add_overflow(a, b, &a)) throw Overflow{};
}
inline unsigned __int128 mul(unsigned __int128 a, unsigned __int128 b) {
  unsigned __int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline void add_to(Integer& a, const Integer& b) { a += b; }
inline Integer mul(const Integer& a, const Integer& b) { return a * b; }

// Sweeps vertices in `order`.  A state records which later vertices within
// the bandwidth window are already matched to earlier ones.
template <class Mask, class Hash, class Value>
Value transfer_count(const std::vector<std::vector<std::pair<int, Value>>>& fwd) {
  std::unordered_map<Mask, Value, Hash> cur, nxt;
  cur.emplace(Mask{}, Value(1));
  for (const auto& nbrs : fwd) {
    nxt.clear();
    for (const auto& [m, val] : cur) {
      if (MaskBits::test(m, 0)) {
        Mask m2 = m;
        MaskBits::shift(m2);
        add_to(nxt[m2], val);
        continue;
      }
      for (const auto& [k, w] : nbrs) {
        if (MaskBits::test(m, k)) continue;
        Mask m2 = m;
        MaskBits::set(m2, k);
        MaskBits::shift(m2);
        add_to(nxt[m2], mul(val, w));
      }
    }
    std::swap(cur, nxt);
    if (cur.empty()) return Value(0);
  }
  auto it = cur.find(Mask{});
  return it == cur.end() ? Value(0) : it->second;
}

template <class Value>
Value run_transfer(const std::vector<std::vector<std::pair<int, Value>>>& fwd, int band) {
  if (band < 64) return transfer_count<std::uint64_t, std::hash<std::uint64_t>, Value>(fwd);
  if (band < 256) return transfer_count<Mask256, Mask256Hash, Value>(fwd);
  throw std::length_error("count_bruteforce: bandwidth " + std::to_string(band) + " too large");
}

inline bool classes_balanced(const PMGraph& g) {
  auto s = g.class_sizes();
  return s[0] == s[1];
}

}  // namespace detail

// Exact M(G) by eliminating vertices along a Cuthill-McKee order with the
// set of already-covered vertices ahead as the memo key.
inline Rational count_bruteforce(const PMGraph& g) {
  int n = g.num_vertices();
  if (n == 0) return 1;
  if (n % 2 || !detail::classes_balanced(g)) return 0;
  Integer L;
  auto W = detail::scaled_weights(g, L);
  auto order = detail::cuthill_mckee(g);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  int band = 0;
  std::vector<std::vector<std::pair<int, Integer>>> fwd(n);
  for (int e = 0; e < g.num_edges(); ++e) {
    int a = pos[g.edges()[e].u], b = pos[g.edges()[e].v];
    if (a > b) std::swap(a, b);
    band = std::max(band, b - a);
    fwd[a].push_back({b - a, W[e]});
  }
  for (auto& f : fwd) std::sort(f.begin(), f.end());

  bool small = true;
  for (const auto& w : W)
    if (w > Integer(std::numeric_limits<std::uint64_t>::max())) small = false;
  if (small) {
    std::vector<std::vector<std::pair<int, unsigned __int128>>> f128(n);
    for (int i = 0; i < n; ++i)
      for (const auto& [k, w] : fwd[i]) f128[i].push_back({k, static_cast<std::uint64_t>(w)});
    try {
      unsigned __int128 r = detail::run_transfer(f128, band);
      Integer z = static_cast<std::uint64_t>(r >> 64);
      z <<= 64;
      z += static_cast<std::uint64_t>(r);
      return detail::unscale(z, L, n / 2);
    } catch (const detail::Overflow&) {
    }
  }
  return detail::unscale(detail::run_transfer(fwd, band), L, n / 2);
}

// Ryser's formula on the biadjacency matrix, subsets visited in Gray-code order.
inline Rational count_permanent(const PMGraph& g, int max_side = 26) {
  int n = g.num_vertices();
  if (n == 0) return 1;
  if (n % 2 || !detail::classes_balanced(g)) return 0;
  int k = n / 2;
  if (k > max_side) throw std::length_error("count_permanent: matrix side " + std::to_string(k) + " too large");
  std::vector<int> idx(n);
  int r = 0, c = 0;
  for (int v = 0; v < n; ++v) idx[v] = g.cls(v) == 0 ? r++ : c++;
  Integer L;
  auto W = detail::scaled_weights(g, L);
  std::vector<std::vector<Integer>> A(k, std::vector<Integer>(k, 0));
  for (int e = 0; e < g.num_edges(); ++e) {
    int u = g.edges()[e].u, v = g.edges()[e].v;
    if (g.cls(u) == 1) std::swap(u, v);
    A[idx[u]][idx[v]] += W[e];
  }
  std::vector<Integer> rowsum(k, 0);
  Integer total = 0;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << k); ++step) {
    int j = std::countr_zero(step);
    gray ^= std::uint64_t{1} << j;
    bool added = (gray >> j) & 1u;
    for (int i = 0; i < k; ++i) {
      if (added)
        rowsum[i] += A[i][j];
      else
        rowsum[i] -= A[i][j];
    }
    Integer prod = 1;
    for (int i = 0; i < k && prod != 0; ++i) prod *= rowsum[i];
    if ((std::popcount(gray) % 2) == (k % 2))
      total += prod;
    else
      total -= prod;
  }
  return detail::unscale(total, L, k);
}

namespace detail {

// det by Bareiss fraction-free elimination with row pivoting.
inline Integer bareiss_det(std::vector<std::vector<Integer>> M) {
  int n = static_cast<int>(M.size());
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M[k][k] == 0) {
      int p = k + 1;
      while (p < n && M[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] /= prev;
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

// Orients edges so that every face except `outer` has an odd number of darts
// agreeing with the orientation.  +1 means u->v.
inline std::vector<int> pfaffian_orientation(const PMGraph& g, const std::vector<int>& verts,
                                             const std::vector<std::vector<int>>& faces) {
  const auto& E = g.edges();
  auto adj = g.adjacency();
  std::vector<int> orient(g.num_edges(), 0);
  std::vector<char> seen(g.num_vertices(), 0);
  std::deque<int> q{verts.front()};
  seen[verts.front()] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (auto [u, e] : adj[v])
      if (!seen[u]) seen[u] = 1, orient[e] = 1, q.push_back(u);
  }
  if (faces.empty()) return orient;
  std::vector<int> dart_face(2 * g.num_edges(), -1);
  for (size_t f = 0; f < faces.size(); ++f)
    for (int d : faces[f]) dart_face[d] = static_cast<int>(f);
  size_t outer = 0;
  for (size_t f = 1; f < faces.size(); ++f)
    if (faces[f].size() > faces[outer].size()) outer = f;
  std::vector<int> open(faces.size(), 0);
  for (size_t f = 0; f < faces.size(); ++f)
    for (int d : faces[f])
      if (!orient[d / 2]) ++open[f];
  std::deque<int> ready;
  for (size_t f = 0; f < faces.size(); ++f)
    if (f != outer && open[f] == 1) ready.push_back(static_cast<int>(f));
  while (!ready.empty()) {
    int f = ready.front();
    ready.pop_front();
    if (open[f] != 1) continue;
    int agree = 0, free_dart = -1;
    for (int d : faces[f]) {
      int o = orient[d / 2];
      if (!o) free_dart = d;
      else if ((d % 2 == 0) == (o == 1)) ++agree;
    }
    // choose so the free dart agrees iff agree is even
    bool want_agree = agree % 2 == 0;
    orient[free_dart / 2] = ((free_dart % 2 == 0) == want_agree) ? 1 : -1;
    for (int d : {2 * (free_dart / 2), 2 * (free_dart / 2) + 1}) {
      int h = dart_face[d];
      if (--open[h] == 1 && h != static_cast<int>(outer)) ready.push_back(h);
    }
  }
  for (int v : verts)
    for (auto [u, e] : adj[v])
      if (!orient[e]) throw std::logic_error("pfaffian orientation left an edge unoriented");
  (void)E;
  return orient;
}

}  // namespace detail

// Kasteleyn/FKT: determinant of a Pfaffian-oriented skew matrix per component.
inline Rational count_fkt(const PMGraph& g) {
  int n = g.num_vertices();
  if (n == 0) return 1;
  if (n % 2 || !detail::classes_balanced(g)) return 0;
  auto rot = embedding_of(g);
  if (!rot) throw std::invalid_argument("count_fkt: graph has no valid planar embedding");
  auto faces = trace_faces(g, *rot);
  int nc = 0;
  auto comp = component_ids(g, &nc);
  std::vector<std::vector<int>> members(nc);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
  std::vector<std::vector<std::vector<int>>> comp_faces(nc);
  for (auto& f : faces) comp_faces[comp[g.edges()[f[0] / 2].u]].push_back(f);

  Integer L;
  auto W = detail::scaled_weights(g, L);
  Rational result = 1;
  for (int c = 0; c < nc; ++c) {
    const auto& vs = members[c];
    int m = static_cast<int>(vs.size());
    if (m % 2) return 0;
    auto orient = detail::pfaffian_orientation(g, vs, comp_faces[c]);
    std::vector<int> local(n, -1);
    for (int i = 0; i < m; ++i) local[vs[i]] = i;
    std::vector<std::vector<Integer>> S(m, std::vector<Integer>(m, 0));
    for (int e = 0; e < g.num_edges(); ++e) {
      int u = g.edges()[e].u, v = g.edges()[e].v;
      if (local[u] < 0) continue;
      if (orient[e] == -1) std::swap(u, v);
      S[local[u]][local[v]] += W[e];
      S[local[v]][local[u]] -= W[e];
    }
    Integer det = detail::bareiss_det(std::move(S));
    Integer pf = exact_sqrt(det);
    result *= detail::unscale(pf, L, m / 2);
    if (result == 0) return 0;
  }
  return result;
}

inline Rational count(const PMGraph& g, Backend b) {
  switch (b) {
    case Backend::brute: return count_bruteforce(g);
    case Backend::permanent: return count_permanent(g);
    default: return count_fkt(g);
  }
}

using Matching = std::vector<int>;  // sorted edge ids

// Perfect matchings in a fixed order: branch on the lowest-index vertex of
// minimum remaining degree, its edges taken by increasing neighbour.
inline std::vector<Matching> enumerate_tilings(const PMGraph& g, std::size_t limit) {
  std::vector<Matching> out;
  if (limit == 0) return out;
  int n = g.num_vertices();
  auto adj = g.adjacency();
  std::vector<char> alive(n, 1);
  Matching cur;
  std::function<void(int)> rec = [&](int left) {
    if (out.size() >= limit) return;
    if (left == 0) {
      Matching m = cur;
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      return;
    }
    int best = -1, bestdeg = 1 << 30;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      int d = 0;
      for (auto [u, e] : adj[v]) d += alive[u];
      if (d < bestdeg) best = v, bestdeg = d;
      if (d == 0) return;
    }
    alive[best] = 0;
    for (auto [u, e] : adj[best]) {
      if (!alive[u]) continue;
      alive[u] = 0;
      cur.push_back(e);
      rec(left - 2);
      cur.pop_back();
      alive[u] = 1;
      if (out.size() >= limit) break;
    }
    alive[best] = 1;
  };
  if (n % 2 == 0) rec(n);
  return out;
}

}  // namespace qoct
