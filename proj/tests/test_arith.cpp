#include <doctest.h>

#include <random>

#include "qfrob/arith.hpp"
#include "qfrob/ratfunc.hpp"

using namespace qfrob;

namespace {
IntPoly P(std::vector<long> c, const std::string& v = "q") {
  std::vector<BigInt> b;
  for (long x : c) b.emplace_back(x);
  return IntPoly(b, v);
}
}  // namespace

TEST_CASE("polynomial ring operations") {
  CHECK(P({1, -1}) * P({1, 1}) == P({1, 0, -1}));
  CHECK((P({3, 4}) * IntPoly("q")).is_zero());
  CHECK(P({1, -1}) * cyclotomic(5) == IntPoly::one_minus_power(5));
  CHECK_THROWS_AS(P({1}, "q") + P({1}, "t"), ArithError);
}

TEST_CASE("kronecker product agrees with schoolbook") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BigInt> a(30 + trial * 7), b(40 + trial * 3);
    for (auto& x : a) x = BigInt(static_cast<long>(rng() % 2000001) - 1000000) * BigInt(static_cast<long>(rng() % 1000));
    for (auto& x : b) x = BigInt(static_cast<long>(rng() % 2000001) - 1000000);
    a.back() = 5;
    b.back() = -3;
    std::vector<BigInt> ref(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) ref[i + j] += a[i] * b[j];
    CHECK(coeff_mul(a, b) == ref);
  }
}

TEST_CASE("ratfunc normalization") {
  RatFunc x = RatFunc::normalize(P({2, -2}), P({4}));
  CHECK(x.scale() == BigRat(1, 2));
  CHECK(x.numerator() == P({1, -1}));
  CHECK(x.denominator() == P({1}));

  RatFunc y = RatFunc::normalize(P({1, 0, -1}, "t"), P({1, -1}, "t"));
  CHECK(y.scale() == 1);
  CHECK(y.numerator() == P({1, 1}, "t"));
  CHECK(y.denominator() == P({1}, "t"));

  RatFunc z = RatFunc::normalize(P({1, -1}, "t"), P({1, 0, -1}, "t"));
  CHECK(z.scale() == 1);
  CHECK(z.numerator() == P({1}, "t"));
  CHECK(z.denominator() == P({1, 1}, "t"));
  CHECK_THROWS_AS(RatFunc::normalize(P({1}), IntPoly("q")), ArithError);
}

TEST_CASE("cyclotomic and brackets") {
  CHECK(cyclotomic(3) == P({1, 1, 1}));
  CHECK(cyclotomic(2) == P({1, 1}));
  CHECK(cyclotomic(5).eval(BigInt(1)) == 5);
  CHECK_THROWS_AS(cyclotomic(6), ArithError);
  CHECK(q_bracket(1) == P({1}));
  CHECK(q_bracket(0).is_zero());
  CHECK(q_bracket(5).eval(BigInt(1)) == 5);
  CHECK(cyclotomic_poly(12) == P({1, 0, -1, 0, 1}));
}

TEST_CASE("taylor expansion at one") {
  CHECK(taylor_at_one(P({0, 0, 1})) == std::vector<BigInt>{1, -2, 1});
  CHECK(taylor_at_one(P({5})) == std::vector<BigInt>{5});
  auto t = taylor_at_one(cyclotomic(5));
  CHECK(t[0] == 5);
  CHECK(t[1] == -10);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    std::vector<long> c(1 + rng() % 12);
    for (auto& x : c) x = static_cast<long>(rng() % 21) - 10;
    IntPoly q = P(c);
    CHECK(from_taylor_at_one(taylor_at_one(q)) == q);
  }
}

TEST_CASE("substitution") {
  CHECK(poly_substitute(P({1, -1}), 5) == IntPoly::one_minus_power(5));
  CHECK(poly_substitute(P({1, 0, -1}, "t"), 5) == IntPoly::one_minus_power(10, "t"));
  IntPoly a = P({1, 2, 3}), b = P({-1, 0, 4});
  CHECK(poly_substitute(a * b, 3) == poly_substitute(a, 3) * poly_substitute(b, 3));
}

TEST_CASE("ratfunc field axioms on random inputs") {
  std::mt19937_64 rng(11);
  auto rnd = [&](std::size_t deg) {
    std::vector<long> c(deg + 1);
    for (auto& x : c) x = static_cast<long>(rng() % 11) - 5;
    c.back() = 1 + static_cast<long>(rng() % 3);
    return P(c, "t");
  };
  for (int i = 0; i < 25; ++i) {
    RatFunc a = RatFunc::normalize(rnd(rng() % 5), rnd(1 + rng() % 4));
    RatFunc b = RatFunc::normalize(rnd(rng() % 5), rnd(1 + rng() % 4));
    if (a.is_zero() || b.is_zero()) continue;
    CHECK((a / b) * (b / a) == RatFunc(BigRat(1)));
    CHECK((a + b) - b == a);
    CHECK(a * (b + a) == a * b + a * a);
  }
}

TEST_CASE("cyclotomic fast form agrees with generic arithmetic") {
  // (1-t^6)/(1-t^2) + (1-t^3)/(1-t) as factored values vs plain fractions
  RatFunc a = RatFunc::one_minus_power(6) / RatFunc::one_minus_power(2);
  RatFunc b = RatFunc::one_minus_power(3) / RatFunc::one_minus_power(1);
  RatFunc s = a + b;
  CHECK(s.numerator() == P({2, 1, 2, 0, 1}, "t"));
  CHECK(s.denominator() == P({1}, "t"));
  RatFunc c = RatFunc::one_minus_power(1) / RatFunc::one_minus_power(10);
  RatFunc d = RatFunc::normalize(P({1, -1}, "t"), IntPoly::one_minus_power(10, "t"));
  CHECK(c == d);
  CHECK(c.substitute(3) == RatFunc::normalize(IntPoly::one_minus_power(3, "t"), IntPoly::one_minus_power(30, "t")));
  CHECK(c.eval_at_one() == BigRat(1, 10));
}
