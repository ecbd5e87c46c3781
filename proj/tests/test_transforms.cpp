#include "oracle.hpp"
#include "qoct/formulas.hpp"
#include "qoct/graph.hpp"
#include "qoct/instances.hpp"
#include "qoct/matchcount.hpp"
#include "qoct/transforms.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace qoct;

namespace {

Rational m(const PMGraph& g) { return count_bruteforce(g); }

// A four-cycle with unit legs; cycle edge i gets weight w[i].
SpiderSite add_spider(PMGraph& g, const std::array<Rational, 4>& w) {
  SpiderSite s;
  for (int i = 0; i < 4; ++i) s.inner[i] = g.add_vertex(i % 2);
  for (int i = 0; i < 4; ++i) s.outer[i] = g.add_vertex(1 - i % 2);
  for (int i = 0; i < 4; ++i) {
    g.add_edge(s.inner[i], s.inner[(i + 1) % 4], w[i]);
    g.add_edge(s.inner[i], s.outer[i]);
  }
  return s;
}

}  // namespace

class Conservation : public ::testing::TestWithParam<std::string> {};

TEST_P(Conservation, RandomInstances) {
  Rng rng(17);
  int nonzero = 0;
  for (int i = 0; i < 30; ++i) {
    auto c = random_transform_case(GetParam(), rng, 30);
    auto before = oracle::matchings(c.before);
    EXPECT_EQ(before, c.multiplier * m(c.after)) << c.rule << " " << c.params;
    nonzero += before != 0;
  }
  EXPECT_GT(nonzero, 0);
}

INSTANTIATE_TEST_SUITE_P(Rules, Conservation, ::testing::ValuesIn(transform_rules()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& ch : s)
                             if (ch == '-') ch = '_';
                           return s;
                         });

TEST(Transforms, VertexSplitRejectsForeignH) {
  auto g = aztec_rectangle(1, 1);
  EXPECT_THROW(vertex_split(g, 0, {0}), std::invalid_argument);
  auto adj = g.adjacency();
  auto rw = vertex_split(g, 0, {adj[0][0].first});
  EXPECT_EQ(rw.after.num_vertices(), g.num_vertices() + 2);
  EXPECT_EQ(m(rw.after), m(g));
}

TEST(Transforms, StarScaleChecksArguments) {
  auto g = aztec_rectangle(1, 2);
  EXPECT_THROW(star_scale(g, 0, 0), std::invalid_argument);
  EXPECT_THROW(star_scale(g, 0, -1), std::invalid_argument);
  EXPECT_THROW(star_scale(g, 99, 2), std::out_of_range);
  auto rw = star_scale(g, 0, Rational(5, 2));
  EXPECT_EQ(rw.multiplier, Rational(2, 5));
  EXPECT_EQ(m(g), rw.multiplier * m(rw.after));
}

TEST(Transforms, SpiderRejectsBadSites) {
  PMGraph g;
  SpiderSite s;
  for (int i = 0; i < 4; ++i) s.inner[i] = g.add_vertex(i % 2);
  for (int i = 0; i < 4; ++i) s.outer[i] = g.add_vertex(1 - i % 2);
  for (int i = 0; i < 4; ++i) {
    g.add_edge(s.inner[i], s.inner[(i + 1) % 4]);
    g.add_edge(s.inner[i], s.outer[i], i == 0 ? 2 : 1);
  }
  EXPECT_THROW(urban_renewal(g, s), std::invalid_argument);
  g.set_weight(g.edge_between(s.inner[0], s.outer[0]), 1);
  auto rw = urban_renewal(g, s);
  EXPECT_EQ(rw.multiplier, 2);
  EXPECT_EQ(oracle::matchings(g), rw.multiplier * m(rw.after));
  SpiderSite dup = s;
  dup.outer[0] = s.inner[1];
  EXPECT_THROW(urban_renewal(g, dup), std::invalid_argument);
}

TEST(Transforms, WeightedSpiderMultiplier) {
  PMGraph g;
  auto s = add_spider(g, {2, 1, 1, 1});
  auto rw = urban_renewal(g, s);
  EXPECT_EQ(rw.multiplier, 3);
  EXPECT_EQ(oracle::matchings(g), rw.multiplier * m(rw.after));
}

TEST(Transforms, DisjointSpidersMultiply) {
  PMGraph g;
  auto s1 = add_spider(g, {1, 1, 1, 1});
  auto s2 = add_spider(g, {1, 1, 1, 1});
  g.add_edge(s1.outer[0], s2.outer[1]);
  g.add_edge(s1.outer[1], s2.outer[0]);
  auto first = urban_renewal(g, s1);
  SpiderSite moved;
  std::set<int> gone(s1.inner.begin(), s1.inner.end());
  auto shift = [&](int v) { return v - static_cast<int>(std::count_if(gone.begin(), gone.end(), [&](int u) { return u < v; })); };
  for (int i = 0; i < 4; ++i) moved.inner[i] = shift(s2.inner[i]), moved.outer[i] = shift(s2.outer[i]);
  auto second = urban_renewal(first.after, moved);
  EXPECT_EQ(first.multiplier * second.multiplier, 4);
  EXPECT_EQ(oracle::matchings(g), 4 * m(second.after));
}

TEST(Transforms, AztecRulesRejectMismatchedSites) {
  auto g = aztec_rectangle(3, 3);
  EXPECT_THROW(lemma_T1(g, 1, 1), std::invalid_argument);
  EXPECT_THROW(otrans_b(g, 1, 2), std::invalid_argument);
  EXPECT_THROW(lemma_T1(g, 0, 1), std::invalid_argument);
  EXPECT_THROW(otrans_a(g, 1, 1), std::invalid_argument);
  EXPECT_THROW(lemma_T6(g, 1, 1), std::invalid_argument);
  auto P = pattern_otrans_b(1, 2);
  std::vector<int> site(P.graph.num_vertices(), 0);
  EXPECT_THROW(otrans_b(P.graph, 1, 2, site), std::invalid_argument);
}

TEST(Transforms, PatternAloneIsConserved) {
  for (int p = 1; p <= 2; ++p)
    for (int q = 2; q <= 3; ++q) {
      auto P = pattern_otrans_b(p, q);
      auto rw = otrans_b(P.graph, p, q);
      EXPECT_EQ(m(P.graph), rw.multiplier * m(rw.after)) << p << "," << q;
    }
}

TEST(Transforms, CompositeVariantMustMatch) {
  for (int a = 2; a <= 6; ++a) {
    auto D = douglas_part(a, {2, 1}, {});
    auto other = D.bottom == BottomColor::white ? BottomColor::black : BottomColor::white;
    EXPECT_THROW(composite_transform(D.pattern.graph, a, {2, 1}, {}, other), std::invalid_argument);
    auto rw = composite_transform(D.pattern.graph, a, {2, 1}, {}, D.bottom);
    EXPECT_EQ(oracle::matchings(D.pattern.graph), rw.multiplier * m(rw.after)) << a;
  }
  EXPECT_THROW(douglas_part(3, {2}, {99}), std::out_of_range);
}

TEST(Transforms, HexagonPairRejectsBadParameters) {
  EXPECT_THROW(hexagon_pair_reduce(2, 2, 0, 0, 2, 1), std::invalid_argument);
  EXPECT_THROW(hexagon_pair_reduce(2, 1, 2, 0, 2, 1), std::invalid_argument);
  EXPECT_THROW(hexagon_pair_reduce(0, 3, 0, 0, 1, 2), std::invalid_argument);
}

TEST(Transforms, HexagonPairFrozenCounts) {
  // oracle values frozen
  struct Row {
    int a, b, c, d, a2, b2;
    long want;
  };
  for (auto r : {Row{3, 1, 1, 1, 3, 1, 18}, Row{4, 1, 1, 1, 3, 2, 96}}) {
    auto hp = hexagon_pair_reduce(r.a, r.b, r.c, r.d, r.a2, r.b2);
    EXPECT_EQ(oracle::matchings(hp.sum), r.want);
    EXPECT_EQ(m(hp.sum), hp.prune_multiplier * oracle::matchings(hp.before));
    EXPECT_EQ(oracle::matchings(hp.before), hp.rewrite.multiplier * m(hp.rewrite.after));
  }
}

TEST(Transforms, HoledAztecMatchesKrattenthaler) {
  int checked = 0;
  for (int mm = 1; mm <= 2; ++mm)
    for (int n = 1; n <= 6; ++n)
      for (int d = 0; d <= 2; ++d)
        for (int f = 1; f <= 3; ++f)
          for (int c = 1; c <= n + 1; ++c) {
            if (!krattenthaler_well_formed(mm, n, c, f, d)) continue;
            std::vector<int> kept;
            for (int i = 0; i < krattenthaler_kept(mm, n, d); ++i) kept.push_back(c + i * f);
            auto g = holed_aztec_rectangle(mm, n, d, kept);
            if (g.num_vertices() > 36) continue;
            EXPECT_EQ(m(g), krattenthaler(mm, n, c, f, d).value) << mm << " " << n << " " << c << " " << f << " " << d;
            ++checked;
          }
  EXPECT_GT(checked, 20);
}
