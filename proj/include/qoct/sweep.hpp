#pragma once
// Exhaustive comparison of the closed forms against exact counts over small
// quasi-octagons.

#include "qoct/formulas.hpp"
#include "qoct/graph.hpp"
#include "qoct/matchcount.hpp"
#include "qoct/region.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qoct {

struct SweepBounds {
  int max_k = 3, max_t = 3, max_l = 3;
  int max_w = 6;       // upper bound on w1 and w2
  int max_h = 4;       // upper bound on every height
  int max_gap_sum = 0;  // 0: 2*max_h + parts + 1 per part
  int max_a = 0;        // 0: max_w + upper gap sum + 2
};

enum class SweepKind { equal_width, special, unequal_width };

struct RegionCase {
  Region region;
  RegionStats stats;
};

// Compositions of at most `parts` positive integers summing to at most `max_sum`,
// in lexicographic order by length then entries.
inline std::vector<std::vector<int>> compositions(int parts, int max_sum) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int len, int left) {
    if (static_cast<int>(cur.size()) == len) {
      out.push_back(cur);
      return;
    }
    for (int g = 1; g <= left; ++g) {
      cur.push_back(g);
      rec(len, left - g);
      cur.pop_back();
    }
  };
  for (int len = 1; len <= parts; ++len) rec(len, max_sum);
  return out;
}

// Walks the parameter space part by part: the upper part only depends on
// (a,d) and the middle part only on (a,d,dbar), so each filter prunes early.
// Regions sharing (a,d,dbar) are handed to `batch` together, in a fixed order.
template <class UpperOk, class MiddleOk, class FullOk, class Batch>
void for_each_region(const SweepBounds& b, UpperOk upper_ok, MiddleOk middle_ok, FullOk full_ok, Batch batch) {
  auto gap_bound = [&](int parts) { return b.max_gap_sum ? b.max_gap_sum : 2 * b.max_h + parts + 1; };
  auto ds = compositions(b.max_k, gap_bound(b.max_k));
  auto dbars = compositions(b.max_t, gap_bound(b.max_t));
  auto dps = compositions(b.max_l, gap_bound(b.max_l));
  for (const auto& d : ds) {
    int dsum = 0;
    for (int g : d) dsum += g;
    int amax = b.max_a ? b.max_a : b.max_w + dsum + 2;
    for (int a = 1; a <= amax; ++a) {
      auto su = region_stats(Region({a, d, {1}, {1}}));
      if (!upper_ok(su)) continue;
      for (const auto& db : dbars) {
        int s = 0;
        for (int g : db) s += g;
        if (s < static_cast<int>(db.size())) continue;
        auto sm = region_stats(Region({a, d, db, {1}}));
        if (!middle_ok(su, sm)) continue;
        std::vector<RegionCase> group;
        for (const auto& dp : dps) {
          Region r({a, d, db, dp});
          auto st = region_stats(r);
          if (full_ok(st)) group.push_back({std::move(r), std::move(st)});
        }
        if (!group.empty()) batch(std::move(group));
      }
    }
  }
}

struct RegionFilter {
  std::function<bool(const RegionStats&)> upper;
  std::function<bool(const RegionStats&, const RegionStats&)> middle;
  std::function<bool(const RegionStats&)> full;
};

inline RegionFilter filter_for(SweepKind kind, const SweepBounds& b) {
  switch (kind) {
    case SweepKind::equal_width:
      return {[b](const RegionStats& u) { return u.h1 <= b.max_h && u.w1 <= b.max_w && u.w1 > u.h1; },
              [b](const RegionStats& u, const RegionStats& m) {
                return m.h2 <= b.max_h && m.w2 == u.w1 && m.w2 > m.h2;
              },
              [b](const RegionStats& s) { return s.h3 <= b.max_h && octagon_main_domain(s); }};
    case SweepKind::special:
      // equal widths with w <= max height
      return {[b](const RegionStats& u) { return u.h1 <= b.max_h && u.w1 <= b.max_w && u.w1 >= 1; },
              [b](const RegionStats& u, const RegionStats& m) { return m.h2 <= b.max_h && m.w2 == u.w1; },
              [b](const RegionStats& s) {
                return s.h3 <= b.max_h && s.w1 == s.w2 && s.w1 <= std::max({s.h1, s.h2, s.h3});
              }};
    default:
      // w1 = w2 + 1 inside the unequal-width domain
      return {[b](const RegionStats& u) { return u.w1 <= b.max_w && u.h1 < u.w1 && u.h1 <= b.max_h && u.w1 >= 2; },
              [b](const RegionStats& u, const RegionStats& m) {
                return m.w2 == u.w1 - 1 && m.h2 < m.w2 && m.h2 <= b.max_h;
              },
              [b](const RegionStats& s) { return s.h3 <= b.max_h && octagon_unequal_domain(s); }};
  }
}

inline std::vector<RegionCase> sweep_regions(SweepKind kind, const SweepBounds& b) {
  auto f = filter_for(kind, b);
  std::vector<RegionCase> out;
  for_each_region(b, f.upper, f.middle, f.full, [&](std::vector<RegionCase>&& g) {
    for (auto& c : g) out.push_back(std::move(c));
  });
  return out;
}

struct CaseResult {
  DiagonalSpec key;
  std::string spec;
  Rational oracle = 0;
  Rational formula = 0;
  std::string rule;
  bool match = true;
  bool excluded = false;  // black triangles on the bottom diagonal
  bool skipped = false;   // above the vertex limit, not counted
};

struct SweepReport {
  std::vector<CaseResult> cases;     // every case if requested, else only failures
  std::map<std::string, std::pair<long, long>> readings;  // reading -> (agree, disagree)
  long total = 0, balanced = 0, unbalanced = 0, excluded = 0, mismatches = 0, skipped = 0;
  bool complete() const { return skipped == 0; }

  // Readings of one ambiguous formula (keys sharing `prefix`) that never disagreed.
  std::vector<std::string> survivors(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : readings)
      if (k.rfind(prefix, 0) == 0 && v.second == 0 && v.first > 0) out.push_back(k);
    return out;
  }
};

// Runs f(i) for i in [0,n) on all hardware threads.
inline void parallel_for(size_t n, const std::function<void(size_t)>& f, unsigned threads = 0) {
  if (!threads) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) f(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads && t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

// Ambiguous formulas whose readings a sweep of this kind decides.
inline std::vector<std::string> reading_families(SweepKind kind) {
  switch (kind) {
    case SweepKind::equal_width: return {"exponent", "aztec-m"};
    case SweepKind::unequal_width: return {"width"};
    default: return {};
  }
}

namespace detail {
struct Trial {
  std::string key;
  Rational value;
};

inline std::vector<Trial> candidate_readings(SweepKind kind, const RegionStats& s) {
  std::vector<Trial> out;
  if (kind == SweepKind::equal_width && balancing_holds(s)) {
    for (auto r : {ExponentReading::h1_3h2, ExponentReading::h1_2h2_h3})
      out.push_back({"exponent:" + to_string(r), octagon_product_form(s, r)});
    for (auto r : {PArgReading::m_h2_h3, PArgReading::m_h1_h3})
      out.push_back({"aztec-m:" + to_string(r), octagon_p_form(s, r)});
  }
  if (kind == SweepKind::unequal_width && balancing_holds(s)) {
    for (auto r : {WidthReading::w1_all, WidthReading::w2_all, WidthReading::w1_w2_w2, WidthReading::w1_w1_w2})
      out.push_back({"width:" + to_string(r), unequal_width_value(s, r)});
  }
  return out;
}
}  // namespace detail

struct SweepOptions {
  unsigned threads = 0;
  bool keep_cases = false;
  int max_vertices = 0;  // 0: no limit; larger regions are skipped
  std::function<void(long)> progress;  // called with the running case count
};

namespace detail {
struct Checked {
  CaseResult result;
  std::vector<Trial> trials;
  int category = 0;  // 0 balanced, 1 unbalanced, 2 excluded, 3 skipped
};

inline Checked check_case(SweepKind kind, const RegionCase& c, int max_vertices) {
  Checked out;
  CaseResult& res = out.result;
  res.key = c.region.spec();
  res.spec = to_string(c.region.spec());
  if (max_vertices > 0 && static_cast<int>(c.region.cells().size()) > max_vertices) {
    out.category = 3;
    res.skipped = true;
    res.rule = "skipped";
    return out;
  }
  res.oracle = count_bruteforce(dual_graph(c.region));
  if (!c.region.last_step_east()) {
    out.category = 2;
    res.excluded = true;
    res.rule = "bottom triangles black";
    res.match = res.oracle == 0;
    return out;
  }
  FormulaResult f;
  switch (kind) {
    case SweepKind::equal_width: f = quasi_octagon_count(c.stats); break;
    case SweepKind::special: f = special_cases(c.stats); break;
    case SweepKind::unequal_width: f = unequal_width_sum(c.stats); break;
  }
  res.formula = f.value;
  bool bal = balancing_holds(c.stats);
  out.category = bal ? 0 : 1;
  res.rule = bal ? f.variant_used : "unbalanced";
  res.match = f.in_domain && f.integrality_ok && res.formula == res.oracle;
  for (auto& t : candidate_readings(kind, c.stats)) {
    t.value = t.value == res.oracle ? Rational(1) : Rational(0);
    out.trials.push_back(std::move(t));
  }
  return out;
}
}  // namespace detail

// Counts every region of the sweep exactly and compares with the closed form.
// Cases come back sorted by spec whatever the thread schedule.
inline SweepReport run_sweep(SweepKind kind, const SweepBounds& b, const SweepOptions& opt = {}) {
  SweepReport rep;
  auto f = filter_for(kind, b);
  for_each_region(b, f.upper, f.middle, f.full, [&](std::vector<RegionCase>&& group) {
    std::vector<detail::Checked> done(group.size());
    parallel_for(group.size(), [&](size_t i) { done[i] = detail::check_case(kind, group[i], opt.max_vertices); }, opt.threads);
    for (auto& c : done) {
      ++rep.total;
      long* bucket[] = {&rep.balanced, &rep.unbalanced, &rep.excluded, &rep.skipped};
      ++*bucket[c.category];
      for (const auto& t : c.trials) {
        auto& tally = rep.readings[t.key];
        (t.value == 1 ? tally.first : tally.second) += 1;
      }
      if (!c.result.match) ++rep.mismatches;
      if (opt.keep_cases || !c.result.match) rep.cases.push_back(std::move(c.result));
    }
    if (opt.progress) opt.progress(rep.total);
  });
  std::stable_sort(rep.cases.begin(), rep.cases.end(),
                   [](const CaseResult& x, const CaseResult& y) { return x.key < y.key; });
  return rep;
}

}  // namespace qoct
