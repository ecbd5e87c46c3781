#pragma once
// Exact integer and rational arithmetic on top of GMP.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoct {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline bool is_integral(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numer(q).str();
  return numer(q).str() + "/" + denom(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: " + s);
  }
}

inline Rational pow2(long e) {
  Integer p = 1;
  p <<= static_cast<unsigned long>(e < 0 ? -e : e);
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

inline Integer ipow(Integer b, unsigned e) {
  Integer r = 1;
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// n! from a table that only ever grows.  Readers share the lock.
inline Integer factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative number");
  static std::shared_mutex mu;
  static std::vector<Integer> table{Integer(1)};
  {
    std::shared_lock lk(mu);
    if (n < static_cast<int>(table.size())) return table[n];
  }
  std::unique_lock lk(mu);
  while (static_cast<int>(table.size()) <= n)
    table.push_back(table.back() * Integer(static_cast<long>(table.size())));
  return table[n];
}

// C(n,2) with the convention 0 for n < 2.
inline long choose2(long n) { return n >= 2 ? n * (n - 1) / 2 : 0; }

inline Integer lcm_of_denominators(const std::vector<Rational>& ws) {
  Integer l = 1;
  for (const auto& w : ws) l = boost::multiprecision::lcm(l, denom(w));
  return l;
}

// Exact square root; throws if z is not a perfect square.
inline Integer exact_sqrt(const Integer& z) {
  if (z < 0) throw std::logic_error("square root of negative integer");
  Integer r = boost::multiprecision::sqrt(z);
  if (r * r != z) throw std::logic_error("not a perfect square: " + z.str());
  return r;
}

}  // namespace qoct
