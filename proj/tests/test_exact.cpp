#include "qoct/exact.hpp"

#include <gtest/gtest.h>

#include <thread>
#include <vector>

using namespace qoct;

TEST(Exact, RationalToString) {
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(8, 4)), "2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_string(Rational(-1, 3)), "-1/3");
}

TEST(Exact, ParseRationalRoundTrip) {
  for (auto q : {Rational(7, 3), Rational(-5, 2), Rational(12), Rational(0)})
    EXPECT_EQ(parse_rational(to_string(q)), q);
  EXPECT_EQ(parse_rational("123456789012345678901234567890"), Rational(Integer("123456789012345678901234567890")));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Exact, PowersOfTwo) {
  EXPECT_EQ(pow2(0), 1);
  EXPECT_EQ(pow2(10), 1024);
  EXPECT_EQ(pow2(-3), Rational(1, 8));
  EXPECT_EQ(pow2(100), Rational(ipow(Integer(2), 100)));
}

TEST(Exact, FactorialAndChoose) {
  Integer f = 1;
  for (int n = 0; n <= 30; ++n) {
    if (n) f *= n;
    EXPECT_EQ(factorial(n), f) << n;
  }
  EXPECT_EQ(choose2(0), 0);
  EXPECT_EQ(choose2(1), 0);
  EXPECT_EQ(choose2(5), 10);
  EXPECT_EQ(choose2(-3), 0);
}

TEST(Exact, FactorialTableIsThreadSafe) {
  std::vector<std::thread> pool;
  std::vector<Integer> got(8);
  for (int t = 0; t < 8; ++t) pool.emplace_back([&, t] { got[t] = factorial(200 + t); });
  for (auto& t : pool) t.join();
  for (int t = 0; t < 8; ++t) EXPECT_EQ(got[t], factorial(199 + t) * (200 + t));
}

TEST(Exact, Integrality) {
  EXPECT_TRUE(is_integral(Rational(4, 2)));
  EXPECT_FALSE(is_integral(Rational(1, 2)));
  EXPECT_EQ(numer(Rational(6, 4)), 3);
  EXPECT_EQ(denom(Rational(6, 4)), 2);
}

TEST(Exact, LcmOfDenominators) {
  EXPECT_EQ(lcm_of_denominators({Rational(1, 4), Rational(5, 6), Rational(2)}), 12);
  EXPECT_EQ(lcm_of_denominators({}), 1);
}

TEST(Exact, SquareRoot) {
  EXPECT_EQ(exact_sqrt(Integer(0)), 0);
  EXPECT_EQ(exact_sqrt(Integer(144)), 12);
  Integer big = ipow(Integer(3), 101);
  EXPECT_EQ(exact_sqrt(big * big), big);
  EXPECT_THROW(exact_sqrt(Integer(15)), std::logic_error);
}
