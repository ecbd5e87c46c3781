#pragma once
// Closed-form tiling counts.

#include "qoct/exact.hpp"
#include "qoct/region.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoct {

struct FormulaResult {
  Rational value = 0;
  std::string variant_used;
  bool integrality_ok = true;
  bool in_domain = true;
};

inline FormulaResult finish(Rational v, std::string variant, bool in_domain = true) {
  FormulaResult r;
  r.integrality_ok = is_integral(v) && v >= 0;
  r.value = std::move(v);
  r.variant_used = std::move(variant);
  r.in_domain = in_domain;
  return r;
}

// prod_{i<j} (s_j - s_i) over the sorted elements of S.
inline Integer delta_op(std::vector<int> s) {
  std::sort(s.begin(), s.end());
  Integer r = 1;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) r *= s[j] - s[i];
  return r;
}

inline std::vector<int> range1(int n) {
  std::vector<int> v;
  for (int i = 1; i <= n; ++i) v.push_back(i);
  return v;
}

// Lozenge tilings of the (a,b)-semihexagon with dents at top positions r_1<...<r_a.
inline Rational semihex_dented(int a, int b, const std::vector<int>& r) {
  if (a < 1 || b < 0) throw std::invalid_argument("semihex_dented: need a >= 1, b >= 0");
  if (static_cast<int>(r.size()) != a) throw std::invalid_argument("semihex_dented: need exactly a positions");
  for (size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 1 || r[i] > a + b) throw std::invalid_argument("semihex_dented: position out of range");
    if (i && r[i] <= r[i - 1]) throw std::invalid_argument("semihex_dented: positions must increase");
  }
  return Rational(delta_op(r), delta_op(range1(a)));
}

// Plane partitions in an a x b x c box: lozenge tilings of the hexagon with sides a,b,c.
inline Integer hexagon_count(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("hexagon_count: negative side");
  Rational r = 1;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      for (int k = 1; k <= c; ++k) r *= Rational(i + j + k - 1, i + j + k - 2);
  return numer(r);
}

namespace detail {
// prod_{i=lo}^{hi} (i-1)!, with 1 for hi = lo-1 and 0 for hi < lo-1.
inline Integer factorial_run(int lo, int hi) {
  if (hi == lo - 1) return 1;
  if (hi < lo - 1) return 0;
  Integer r = 1;
  for (int i = lo; i <= hi; ++i) r *= factorial(i - 1);
  return r;
}
}  // namespace detail

// Number of kept long-row positions in the holed Aztec rectangle of the
// Krattenthaler count.
inline int krattenthaler_kept(int m, int n, int d) { return 2 * n - 2 * m - d + 2; }

// True when the kept positions c, c+f, ... all fit in the long row of length n+1.
inline bool krattenthaler_well_formed(int m, int n, int c, int f, int d) {
  if (m < 1 || n < 1 || d < 0 || c < 1 || f < 1) return false;
  int k = krattenthaler_kept(m, n, d);
  if (k < 0) return false;
  if (k == 0) return c == 1 && f == 1;
  return c + (k - 1) * f <= n + 1;
}

// Tilings of AR_{2m+d-1,n} whose long row d below the middle keeps only the
// positions c, c+f, c+2f, ....
inline FormulaResult krattenthaler(int m, int n, int c, int f, int d) {
  bool dom = krattenthaler_well_formed(m, n, c, f, d);
  long e2 = choose2(2L * m + d) + static_cast<long>(n + 1) * (n - 2 * m - d + 1);
  long ef = static_cast<long>(m) * m + static_cast<long>(d - 1) * m + choose2(d) +
            static_cast<long>(n) * (n - 2 * m - d + 1);
  Integer num = detail::factorial_run(m + 1, n + 1) * detail::factorial_run(m + d + 1, n + 1) *
                detail::factorial_run(1, n - m + 1) * detail::factorial_run(1, n - m - d + 1);
  Integer den = 1;
  for (int i = 1; i <= 2 * n - 2 * m - d + 2; ++i) {
    int x = c + f * (i - 1) - 1, y = n + 1 - c - f * (i - 1);
    if (x < 0 || y < 0) return finish(0, "krattenthaler", dom);
    den *= factorial(x) * factorial(y);
  }
  if (num == 0) return finish(0, "krattenthaler", dom);
  Rational v = pow2(e2) * Rational(num, den);
  if (ef >= 0)
    v *= Rational(ipow(Integer(f), static_cast<unsigned>(ef)));
  else
    v /= Rational(ipow(Integer(f), static_cast<unsigned>(-ef)));
  return finish(v, "krattenthaler", dom);
}

// Power of two shared by the octagon formulas: C1+C2+C3 - sum h_i(2w_i-h_i+1)/2.
inline Rational octagon_prefactor(const RegionStats& s, int wa, int wb, int wc) {
  Rational e = Rational(s.c1 + s.c2 + s.c3);
  const int h[3] = {s.h1, s.h2, s.h3}, w[3] = {wa, wb, wc};
  for (int i = 0; i < 3; ++i) e -= Rational(h[i] * (2 * w[i] - h[i] + 1), 2);
  if (!is_integral(e)) throw std::logic_error("octagon prefactor exponent is not an integer");
  return pow2(static_cast<long>(numer(e)));
}

enum class ExponentReading { h1_3h2, h1_2h2_h3 };
enum class PArgReading { m_h2_h3, m_h1_h3 };
enum class WidthReading { w1_all, w2_all, w1_w2_w2, w1_w1_w2 };

inline std::string to_string(ExponentReading r) {
  return r == ExponentReading::h1_3h2 ? "binom(h1+3h2,2)" : "binom(h1+2h2+h3,2)";
}
inline std::string to_string(PArgReading r) {
  return r == PArgReading::m_h2_h3 ? "m=h2+h3" : "m=h1+h3";
}
inline std::string to_string(WidthReading r) {
  switch (r) {
    case WidthReading::w1_all: return "w=(w1,w1,w1)";
    case WidthReading::w2_all: return "w=(w2,w2,w2)";
    case WidthReading::w1_w2_w2: return "w=(w1,w2,w2)";
    default: return "w=(w1,w1,w2)";
  }
}

inline constexpr ExponentReading kExponentReading = ExponentReading::h1_2h2_h3;
inline constexpr PArgReading kPArgReading = PArgReading::m_h2_h3;
inline constexpr WidthReading kWidthReading = WidthReading::w1_w2_w2;

// Product form of the equal-width count; assumes balance.
inline Rational octagon_product_form(const RegionStats& s, ExponentReading r) {
  int h1 = s.h1, h2 = s.h2, h3 = s.h3, w = s.w1;
  long x = r == ExponentReading::h1_3h2 ? h1 + 3L * h2 : h1 + 2L * h2 + h3;
  long e = choose2(x) - 2L * h2 * (w + h2) - choose2(h1 + h2) - choose2(h2 + h3);
  Integer num = detail::factorial_run(h2 + h3 + 1, h2 + w) * detail::factorial_run(h1 + h2 + 1, h2 + w) *
                detail::factorial_run(1, w - h3) * detail::factorial_run(1, w - h1);
  Integer den = 1;
  for (int i = 1; i <= w - h2; ++i) den *= factorial(h2 + i - 1) * factorial(w - i);
  return octagon_prefactor(s, w, w, w) * pow2(e) * Rational(num, den);
}

// Same count through the holed Aztec rectangle formula.
inline Rational octagon_p_form(const RegionStats& s, PArgReading r) {
  int h1 = s.h1, h2 = s.h2, h3 = s.h3, w = s.w1;
  if (h1 < h3) std::swap(h1, h3);
  int m = r == PArgReading::m_h2_h3 ? h2 + h3 : h1 + h3;
  long e = -choose2(h1 + h2) - choose2(h2 + h3);
  return octagon_prefactor(s, w, w, w) * pow2(e) * krattenthaler(m, w + h2 - 1, h2 + 1, 1, h1 - h3).value;
}

inline bool octagon_main_domain(const RegionStats& s) {
  return s.w1 == s.w2 && s.w1 > std::max({s.h1, s.h2, s.h3});
}

// Equal widths w > max(h1,h2,h3).
inline FormulaResult quasi_octagon_count(const RegionStats& s, ExponentReading er = kExponentReading,
                                         PArgReading pr = kPArgReading) {
  std::string tag = to_string(er) + ";" + to_string(pr);
  if (!octagon_main_domain(s)) return finish(0, tag, false);
  if (!balancing_holds(s)) return finish(0, tag);
  Rational a = octagon_product_form(s, er);
  Rational b = octagon_p_form(s, pr);
  if (er == kExponentReading && pr == kPArgReading && a != b)
    throw std::logic_error("product and Aztec forms disagree: " + to_string(a) + " vs " + to_string(b));
  return finish(a, tag);
}

// Equal widths w = max(h1,h2,h3) or w below it.
inline FormulaResult special_cases(const RegionStats& s) {
  int h1 = s.h1, h2 = s.h2, h3 = s.h3, w = s.w1;
  if (s.w1 != s.w2) throw std::invalid_argument("special_cases: widths differ");
  if (w < std::max({h1, h2, h3})) return finish(0, "case a");
  if (!balancing_holds(s)) return finish(0, "unbalanced");
  Rational p = octagon_prefactor(s, w, w, w);
  if (h1 == w && h2 == w && h3 == w) return finish(p, "case b");
  if (h1 == w && h2 == h3 && h2 < w) return finish(p * Rational(hexagon_count(h2, w - h2, h2)), "case c");
  if (h3 == w && h1 == h2 && h2 < w) return finish(p * Rational(hexagon_count(h2, w - h2, h2)), "case d");
  throw std::invalid_argument("special_cases: heights fit no case");
}

inline bool octagon_unequal_domain(const RegionStats& s) {
  return s.w1 > s.w2 && s.h1 < s.w1 && s.h2 < s.w2 && s.h3 < s.w2;
}

// Sum over the splits of [w2-h2] into A and B with |A| = w2-h3, |B| = w1-h1.
inline Rational unequal_width_sum_term(const RegionStats& s) {
  int h1 = s.h1, h2 = s.h2, h3 = s.h3, w1 = s.w1, w2 = s.w2;
  int n = w2 - h2, na = w2 - h3, nb = w1 - h1;
  if (n < 0 || na < 0 || nb < 0 || na + nb != n) return 0;
  Rational total = 0;
  Integer d1 = delta_op(range1(h1 + h2 + w1 - w2)), d2 = delta_op(range1(h2 + h3));
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + na, 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::set<int> s1, s2;
    for (int i = 1; i <= h2 + 2 * w1 - w2; ++i) s1.insert(i);
    for (int i = 1; i <= w2 + h2; ++i) s2.insert(i);
    for (int x = 1; x <= n; ++x) {
      if (pick[x - 1])
        s2.erase(h2 + x);
      else
        s1.erase(h2 + w1 - w2 + x);
    }
    total += Rational(delta_op({s1.begin(), s1.end()}), d1) * Rational(delta_op({s2.begin(), s2.end()}), d2);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return total;
}

inline Rational unequal_width_value(const RegionStats& s, WidthReading r) {
  int a = s.w1, b = s.w1, c = s.w1;
  switch (r) {
    case WidthReading::w1_all: break;
    case WidthReading::w2_all: a = b = c = s.w2; break;
    case WidthReading::w1_w2_w2: b = c = s.w2; break;
    case WidthReading::w1_w1_w2: c = s.w2; break;
  }
  return octagon_prefactor(s, a, b, c) * unequal_width_sum_term(s);
}

inline FormulaResult unequal_width_sum(const RegionStats& s, WidthReading r = kWidthReading) {
  if (!octagon_unequal_domain(s)) return finish(0, to_string(r), false);
  if (!balancing_holds(s)) return finish(0, to_string(r));
  return finish(unequal_width_value(s, r), to_string(r));
}

}  // namespace qoct
