#pragma once
// Random small instances for every rewrite, with the rewrite already applied.

#include "qoct/exact.hpp"
#include "qoct/graph.hpp"
#include "qoct/transforms.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoct {

using Rng = std::mt19937_64;

struct TransformCase {
  std::string rule;
  std::string params;
  PMGraph before;
  PMGraph after;
  Rational multiplier = 1;  // M(before) = multiplier * M(after)
};

inline const std::vector<std::string>& transform_rules() {
  static const std::vector<std::string> rules = {"vs",   "star",     "spider",   "composite-white", "composite-black",
                                                 "t1",   "otrans-a", "otrans-b", "t6",              "hexpair"};
  return rules;
}

namespace detail {
inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational random_weight(Rng& rng) { return Rational(uniform(rng, 1, 4), uniform(rng, 1, 3)); }

// Adds vertices joined to `seam` and to each other so that both classes end up
// the same size.  Existing vertices off the seam are left alone.
inline void close_randomly(PMGraph& g, const std::vector<int>& seam, Rng& rng, int extra_pairs, bool weighted) {
  auto sizes = g.class_sizes();
  std::vector<int> fresh;
  int lacking = sizes[0] < sizes[1] ? 0 : 1;
  for (int i = 0; i < std::abs(sizes[0] - sizes[1]); ++i) fresh.push_back(g.add_vertex(lacking));
  for (int i = 0; i < extra_pairs; ++i) {
    fresh.push_back(g.add_vertex(0));
    fresh.push_back(g.add_vertex(1));
  }
  std::vector<int> pool = seam;
  pool.insert(pool.end(), fresh.begin(), fresh.end());
  auto weight = [&] { return weighted ? random_weight(rng) : Rational(1); };
  auto link = [&](int v, int want) {
    std::vector<int> opp;
    for (int u : pool)
      if (g.cls(u) != g.cls(v) && g.edge_between(u, v) < 0 && !(std::count(seam.begin(), seam.end(), u) &&
                                                               std::count(seam.begin(), seam.end(), v)))
        opp.push_back(u);
    std::shuffle(opp.begin(), opp.end(), rng);
    for (int i = 0; i < want && i < static_cast<int>(opp.size()); ++i) g.add_edge(v, opp[i], weight());
  };
  for (int v : fresh) link(v, uniform(rng, 2, 3));
  for (int v : seam) {
    bool touched = false;
    for (int u : fresh) touched = touched || g.edge_between(u, v) >= 0;
    if (!touched) link(v, 1);
  }
}

inline PMGraph random_bipartite(Rng& rng, int pairs, bool weighted) {
  PMGraph g;
  close_randomly(g, {}, rng, pairs, weighted);
  return g;
}

inline TransformCase glue_and_apply(const std::string& rule, const std::string& params, const Pattern& P, Rng& rng,
                                    const std::function<Rewrite(const PMGraph&)>& apply) {
  PMGraph before = P.graph;
  close_randomly(before, P.seam, rng, uniform(rng, 1, 3), true);
  auto rw = apply(before);
  return {rule, params, before, rw.after, rw.multiplier};
}

inline std::string pq(int p, int q) { return "p=" + std::to_string(p) + " q=" + std::to_string(q); }
}  // namespace detail

// One random instance of `rule`.  Graph sizes stay around `budget` vertices.
inline TransformCase random_transform_case(const std::string& rule, Rng& rng, int budget = 40) {
  using detail::uniform;
  if (rule == "vs") {
    auto g = detail::random_bipartite(rng, uniform(rng, 3, std::max(3, budget / 2 - 2)), true);
    int v = uniform(rng, 0, g.num_vertices() - 1);
    std::set<int> H;
    auto adj = g.adjacency();
    for (auto [u, e] : adj[v])
      if (uniform(rng, 0, 1)) H.insert(u);
    auto rw = vertex_split(g, v, H);
    return {rule, "v=" + std::to_string(v) + " |H|=" + std::to_string(H.size()), g, rw.after, rw.multiplier};
  }
  if (rule == "star") {
    auto g = detail::random_bipartite(rng, uniform(rng, 3, std::max(3, budget / 2 - 1)), true);
    int v = uniform(rng, 0, g.num_vertices() - 1);
    Rational t = detail::random_weight(rng);
    auto rw = star_scale(g, v, t);
    return {rule, "v=" + std::to_string(v) + " t=" + to_string(t), g, rw.after, rw.multiplier};
  }
  if (rule == "spider") {
    PMGraph g;
    SpiderSite s;
    for (int i = 0; i < 4; ++i) s.inner[i] = g.add_vertex(i % 2);
    for (int i = 0; i < 4; ++i) s.outer[i] = g.add_vertex(1 - i % 2);
    for (int i = 0; i < 4; ++i) {
      g.add_edge(s.inner[i], s.inner[(i + 1) % 4], detail::random_weight(rng));
      g.add_edge(s.inner[i], s.outer[i]);
    }
    detail::close_randomly(g, {s.outer.begin(), s.outer.end()}, rng, uniform(rng, 1, std::max(1, budget / 2 - 4)),
                           true);
    auto rw = urban_renewal(g, s);
    return {rule, "cycle 0-1-2-3 legs 4-7", g, rw.after, rw.multiplier};
  }
  if (rule == "composite-white" || rule == "composite-black") {
    auto want = rule == "composite-white" ? BottomColor::white : BottomColor::black;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      int a = uniform(rng, 1, 6);
      std::vector<int> d;
      int k = uniform(rng, 0, 3) ? uniform(rng, 2, 3) : 1;
      for (int i = 0; i < k; ++i) d.push_back(uniform(rng, 1, 3));
      Region r({a, d, {1}, {1}});
      auto st = region_stats(r);
      if (st.w1 < 1 || st.h1 < 1) continue;
      std::set<int> holes;
      for (int p = 1; p <= st.w1; ++p)
        if (uniform(rng, 0, 3) == 0) holes.insert(p);
      DouglasPart D;
      try {
        D = douglas_part(a, d, holes);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (D.bottom != want || D.pattern.graph.num_vertices() + 2 > budget) continue;
      std::string params = "a=" + std::to_string(a) + " d=" + detail::csv(d) + " holes=" + detail::csv({holes.begin(), holes.end()});
      auto c = detail::glue_and_apply(rule, params, D.pattern, rng, [&](const PMGraph& g) {
        return composite_transform(g, a, d, holes, want);
      });
      if (c.before.num_vertices() <= budget) return c;
    }
    throw std::runtime_error("no Douglas part of the requested colour within budget");
  }
  if (rule == "t1" || rule == "otrans-a" || rule == "otrans-b" || rule == "t6") {
    int qmin = rule == "t1" ? 1 : 2;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      int p = uniform(rng, 1, 3), q = uniform(rng, qmin, 4);
      Pattern P = rule == "t1"         ? pattern_t1(p, q)
                  : rule == "otrans-a" ? pattern_otrans_a(p, q)
                  : rule == "otrans-b" ? pattern_otrans_b(p, q)
                                       : pattern_t6(p, q);
      if (P.graph.num_vertices() + 2 > budget) continue;
      auto c = detail::glue_and_apply(rule, detail::pq(p, q), P, rng, [&](const PMGraph& g) {
        if (rule == "t1") return lemma_T1(g, p, q);
        if (rule == "otrans-a") return otrans_a(g, p, q);
        if (rule == "otrans-b") return otrans_b(g, p, q);
        return lemma_T6(g, p, q);
      });
      if (c.before.num_vertices() <= budget) return c;
    }
    throw std::runtime_error("no " + rule + " pattern within budget");
  }
  if (rule == "hexpair") {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      int n = uniform(rng, 2, 6);
      int a = uniform(rng, 1, n - 1), a2 = uniform(rng, 1, n - 1);
      int m = std::min(a, a2);
      int c = uniform(rng, 0, m - 1), d = uniform(rng, 0, m - 1);
      auto hp = hexagon_pair_reduce(a, n - a, c, d, a2, n - a2);
      if (hp.sum.num_vertices() > budget) continue;
      std::string params = "a=" + std::to_string(a) + " b=" + std::to_string(n - a) + " c=" + std::to_string(c) +
                           " d=" + std::to_string(d) + " a'=" + std::to_string(a2) + " b'=" + std::to_string(n - a2);
      return {rule, params, hp.sum, hp.rewrite.after, hp.prune_multiplier * hp.rewrite.multiplier};
    }
    throw std::runtime_error("no hexagon pair within budget");
  }
  throw std::invalid_argument("unknown rule: " + rule);
}

}  // namespace qoct
