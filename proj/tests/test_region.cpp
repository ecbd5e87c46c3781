#include "oracle.hpp"
#include "qoct/graph.hpp"
#include "qoct/matchcount.hpp"
#include "qoct/region.hpp"
#include "qoct/sweep.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qoct;

namespace {

const char* kFigure = "a=6 d=5,3 dbar=4,4,4 dprime=3,5";

std::vector<DiagonalSpec> sample_specs() {
  std::vector<DiagonalSpec> out;
  for (int a = 1; a <= 6; ++a)
    for (const auto& d : compositions(2, 4))
      for (const auto& db : compositions(2, 4)) {
        int s = 0;
        for (int g : db) s += g;
        if (s < static_cast<int>(db.size())) continue;
        for (const auto& dp : compositions(2, 3)) out.push_back({a, d, db, dp});
      }
  return out;
}

std::vector<DiagonalSpec> every_nth(const std::vector<DiagonalSpec>& v, size_t n) {
  std::vector<DiagonalSpec> out;
  for (size_t i = 0; i < v.size(); i += n) out.push_back(v[i]);
  return out;
}

}  // namespace

TEST(Region, FigureHeightsAndWidths) {
  Region r(parse_spec(kFigure));
  auto s = region_stats(r);
  EXPECT_EQ(s.h1, 5);
  EXPECT_EQ(s.h2, 6);
  EXPECT_EQ(s.h3, 5);
  EXPECT_EQ(s.w1, 8);
  EXPECT_EQ(s.w2, 8);
}

TEST(Region, FigureCellCountsMatchCensus) {
  Region r(parse_spec(kFigure));
  auto s = region_stats(r);
  auto c = oracle::census(r);
  EXPECT_EQ(s.c1, c.c1);
  EXPECT_EQ(s.c2, c.c2);
  EXPECT_EQ(s.c3, c.c3);
  EXPECT_EQ(s.c1, 37);
  EXPECT_EQ(s.c2, 50);
  EXPECT_EQ(s.c3, 38);
}

TEST(Region, FigureLayersAndType) {
  auto s = region_stats(Region(parse_spec(kFigure)));
  EXPECT_EQ(s.layers, (std::vector<Layer>{{2, 8}, {2, 9}, {2, 8}}));
  EXPECT_EQ(s.octagon_type, 1);
  long c2 = 0;
  for (const auto& L : s.layers) c2 += static_cast<long>(L.height) * L.width;
  EXPECT_EQ(c2, s.c2);
}

TEST(Region, FigureWidthsFromCorners) {
  Region r(parse_spec(kFigure));
  const auto& k = r.corners();
  // B,G on ell and C,F on ell'
  EXPECT_EQ(k[1].y - k[1].x, r.ell());
  EXPECT_EQ(k[6].y - k[6].x, r.ell());
  EXPECT_EQ(k[2].y - k[2].x, r.ell_prime());
  EXPECT_EQ(k[5].y - k[5].x, r.ell_prime());
  EXPECT_EQ(k[1].x - k[6].x, 8);
  EXPECT_EQ(k[2].x - k[5].x, 8);
  EXPECT_EQ(k[0].x - k[7].x, 6);
  EXPECT_EQ(k[0].y - k[0].x, r.top());
  EXPECT_EQ(k[7].y - k[7].x, r.top());
}

TEST(Region, FigureStatsJson) {
  auto j = to_json(region_stats(Region(parse_spec(kFigure))));
  EXPECT_EQ(j.dump(),
            R"({"h1":5,"h2":6,"h3":5,"w1":8,"w2":8,"c1":37,"c2":50,"c3":38,"layers":[[2,8],[2,9],[2,8]],"type":1})");
}

TEST(Region, SpecParseRoundTrip) {
  auto s = parse_spec(kFigure);
  EXPECT_EQ(s.a, 6);
  EXPECT_EQ(s.upper_gaps, (std::vector<int>{5, 3}));
  EXPECT_EQ(s.middle_gaps, (std::vector<int>{4, 4, 4}));
  EXPECT_EQ(s.lower_gaps, (std::vector<int>{3, 5}));
  EXPECT_EQ(to_string(s), kFigure);
  EXPECT_EQ(parse_spec(to_string(s)), s);
}

TEST(Region, SpecParseErrors) {
  EXPECT_THROW(parse_spec("a=6 d=5,x dbar=4 dprime=3"), std::invalid_argument);
  EXPECT_THROW(parse_spec("a=6 d=5, dbar=4 dprime=3"), std::invalid_argument);
  EXPECT_THROW(parse_spec("a=6 d=5 dbar=4"), std::invalid_argument);
  EXPECT_THROW(parse_spec("a=0 d=5 dbar=4 dprime=3"), std::invalid_argument);
  EXPECT_THROW(parse_spec("a=2 d=0 dbar=4 dprime=3"), std::invalid_argument);
  EXPECT_THROW(parse_spec("a=2 d=1 dbar=4 dprime=3 q=1"), std::invalid_argument);
  EXPECT_THROW(parse_spec("a=2 a=3 d=1 dbar=4 dprime=3"), std::invalid_argument);
  EXPECT_THROW(parse_spec("a=2 d=1 dbar=-1 dprime=3"), std::invalid_argument);
}

TEST(Region, CellsAreExactlyTheFundamentalRegionsInside) {
  for (const auto& spec : every_nth(sample_specs(), 7)) {
    Region r(spec);
    std::set<oracle::CellKey> got;
    for (const auto& c : r.cells()) got.insert({c.x, c.y, static_cast<int>(c.kind)});
    EXPECT_EQ(got, oracle::cells_inside(r)) << to_string(spec);
  }
}

TEST(Region, ColoringIsProperAndAnchored) {
  for (const auto& spec : every_nth(sample_specs(), 5)) {
    Region r(spec);
    auto g = dual_graph(r);
    for (const auto& e : g.edges()) EXPECT_NE(r.cells()[e.u].color, r.cells()[e.v].color);
    for (const auto& c : r.cells())
      if (c.kind == CellKind::lower && c.offset() == r.top()) {
        EXPECT_EQ(c.color, 0) << to_string(spec);
      }
  }
}

TEST(Region, StatsAgreeWithCensus) {
  for (const auto& spec : every_nth(sample_specs(), 3)) {
    Region r(spec);
    auto s = region_stats(r);
    auto c = oracle::census(r);
    ASSERT_EQ(s.c1, c.c1) << to_string(spec);
    ASSERT_EQ(s.c2, c.c2) << to_string(spec);
    ASSERT_EQ(s.c3, c.c3) << to_string(spec);
    ASSERT_EQ(s.h1, c.h1) << to_string(spec);
    ASSERT_EQ(s.h2, c.h2) << to_string(spec);
    ASSERT_EQ(s.h3, c.h3) << to_string(spec);
  }
}

TEST(Region, BoundaryIsMirrorSymmetric) {
  for (const auto& spec : every_nth(sample_specs(), 11)) {
    Region r(spec);
    const auto& ne = r.ne_path();
    const auto& sw = r.sw_path();
    ASSERT_EQ(ne.size(), sw.size());
    // reflection in the line x + y = c through the midpoint of AH
    int c = (ne[0].x + ne[0].y + sw[0].x + sw[0].y) / 2;
    for (size_t i = 0; i < ne.size(); ++i) {
      EXPECT_EQ(sw[i].x, c - ne[i].y) << to_string(spec);
      EXPECT_EQ(sw[i].y, c - ne[i].x) << to_string(spec);
    }
    EXPECT_EQ(ne[0].x - sw[0].x, spec.a);
  }
}

TEST(Region, LastStepEastMeansWhiteBottomTriangles) {
  for (const auto& spec : every_nth(sample_specs(), 5)) {
    Region r(spec);
    int bottom = r.diagonals().front();
    for (const auto& c : r.cells())
      if (c.kind == CellKind::upper && c.offset() == bottom) {
        EXPECT_EQ(c.color == 0, r.last_step_east()) << to_string(spec);
      }
  }
}

TEST(Region, LayerInvariants) {
  for (const auto& spec : sample_specs()) {
    Region r(spec);
    auto s = region_stats(r);
    if (s.w1 <= 0 || s.w2 <= 0 || s.w1 < std::max({s.h1, s.h2, s.h3}) || s.w2 < std::max({s.h2, s.h3})) continue;
    int sum = 0;
    for (const auto& L : s.layers) sum += L.height;
    ASSERT_EQ(sum, s.h2) << to_string(spec);
    for (size_t j = 0; j + 1 < s.layers.size(); ++j)
      ASSERT_EQ(std::abs(s.layers[j].width - s.layers[j + 1].width), 1) << to_string(spec);
  }
}

TEST(Region, TypeOneWithEqualWidthsHasOddLayerCount) {
  int seen = 0;
  for (const auto& spec : sample_specs()) {
    Region r(spec);
    auto s = region_stats(r);
    if (s.octagon_type != 1 || s.w1 != s.w2 || s.w1 < 1 || !r.last_step_east()) continue;
    if (s.w1 < std::max({s.h1, s.h2, s.h3})) continue;
    ++seen;
    ASSERT_EQ(s.layers.size() % 2, 1u) << to_string(spec);
    EXPECT_EQ(s.layers.front().width, s.w1) << to_string(spec);
    EXPECT_EQ(s.layers.back().width, s.w1) << to_string(spec);
  }
  EXPECT_GT(seen, 0);
}

TEST(Region, BalanceIffEqualColorTotalsOnSweepDomains) {
  SweepBounds b;
  b.max_w = 4, b.max_h = 3, b.max_k = b.max_t = b.max_l = 2;
  int checked = 0, balanced = 0;
  for (auto kind : {SweepKind::equal_width, SweepKind::unequal_width}) {
    for (const auto& c : sweep_regions(kind, b)) {
      if (!c.region.last_step_east()) continue;
      auto [black, white] = color_totals(c.region);
      ASSERT_EQ(balancing_holds(c.stats), black == white) << to_string(c.region.spec());
      ++checked;
      balanced += balancing_holds(c.stats);
    }
  }
  EXPECT_GT(checked, 1000);
  EXPECT_GT(balanced, 0);
}

TEST(Region, ReflectionPreservesCount) {
  SweepBounds b;
  b.max_w = 4, b.max_h = 3, b.max_k = b.max_t = b.max_l = 2;
  int checked = 0;
  for (const auto& c : sweep_regions(SweepKind::equal_width, b)) {
    if (!c.region.last_step_east() || checked >= 150) continue;
    const auto& s = c.region.spec();
    std::vector<int> rdb(s.middle_gaps.rbegin(), s.middle_gaps.rend());
    bool found = false;
    for (int a = 1; a <= 40 && !found; ++a) {
      Region m({a, s.lower_gaps, rdb, s.upper_gaps});
      auto t = region_stats(m);
      if (t.h1 != c.stats.h3 || t.h3 != c.stats.h1 || t.h2 != c.stats.h2 || t.w1 != c.stats.w2 ||
          t.w2 != c.stats.w1 || t.c1 != c.stats.c3 || t.c3 != c.stats.c1 || !m.last_step_east())
        continue;
      found = true;
      EXPECT_EQ(count_bruteforce(dual_graph(m)), count_bruteforce(dual_graph(c.region))) << to_string(s);
    }
    EXPECT_TRUE(found) << to_string(s);
    ++checked;
  }
  EXPECT_EQ(checked, 150);
}

TEST(Region, SmallestRegion) {
  Region r(parse_spec("a=1 d=1 dbar=1 dprime=1"));
  auto s = region_stats(r);
  EXPECT_EQ(s.h1, 1);
  EXPECT_EQ(s.h2 + s.h3, 0);
  EXPECT_EQ(oracle::matchings(dual_graph(r)), 0);
  EXPECT_EQ(count_fkt(dual_graph(r)), 0);
}

TEST(Region, UnitMiddleGapsGiveOneRowPerLayer) {
  for (int t = 1; t <= 4; ++t) {
    DiagonalSpec spec{3, {2}, std::vector<int>(t, 1), {2}};
    Region r(spec);
    auto s = region_stats(r);
    EXPECT_EQ(s.h2, t);
    ASSERT_EQ(static_cast<int>(s.layers.size()), t);
    for (const auto& layer : s.layers) EXPECT_EQ(layer.height, 1);
  }
}
