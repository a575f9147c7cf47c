#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "leafmult/error.hpp"
#include "leafmult/poly/parse.hpp"
#include "leafmult/poly/polynomial.hpp"
#include "leafmult/poly/upoly.hpp"

using namespace leafmult;

namespace {

RingPtr xy() { return make_ring({"x", "y"}); }

Polynomial P(const RingPtr& r, const char* s) { return parse_polynomial(r, s); }

}  // namespace

TEST_CASE("arith") {
  auto r = xy();
  CHECK(P(r, "x+y") + P(r, "x-y") == P(r, "2*x"));
  CHECK(P(r, "x+y") * P(r, "x-y") == P(r, "x^2-y^2"));
  Polynomial p = P(r, "3*x^2*y - 1/2");
  CHECK(p + Polynomial(r) == p);
  CHECK_THROWS_AS(p + P(make_ring({"x", "z"}), "x"), Error);
}

TEST_CASE("derive") {
  auto r = xy();
  CHECK(derive(P(r, "x^2*y"), 0) == P(r, "2*x*y"));
  CHECK(derive(P(r, "7"), 0).is_zero());
  CHECK(derive(P(r, "x^3+x*y^2"), 1) == P(r, "2*x*y"));
  CHECK_THROWS(derive(P(r, "x"), 2));
}

TEST_CASE("evaluate") {
  auto r = xy();
  std::vector<Rational> pt{2, 1};
  CHECK(evaluate(P(r, "x^2+y"), pt) == 5);
  CHECK(evaluate(Polynomial(r), pt) == 0);
  std::vector<Rational> diag{3, 3};
  CHECK(evaluate(P(r, "(x-y)*(x+y)"), diag) == 0);
}

TEST_CASE("gcd") {
  auto r = xy();
  CHECK(gcd(P(r, "x^2-y^2"), P(r, "x-y")) == P(r, "x-y"));
  CHECK(gcd(P(r, "x-y"), P(r, "x+y")) == P(r, "1"));
  CHECK(gcd(P(r, "-3*x+3*y"), Polynomial(r)) == P(r, "x-y"));

  // Oracle: the argument factors are known, so trial-divide the product of
  // every candidate common factor and keep the largest one dividing both.
  Polynomial a = P(r, "x^2*(x-y^2)");
  Polynomial b = P(r, "x*(x-2*y^2)");
  std::vector<Polynomial> candidates{P(r, "1"), P(r, "x"), P(r, "x^2"), P(r, "x-y^2"),
                                     P(r, "x-2*y^2"), P(r, "x*(x-y^2)"), P(r, "x*(x-2*y^2)")};
  Polynomial best = P(r, "1");
  for (const auto& c : candidates) {
    Polynomial q;
    if (try_divide(a, c, q) && try_divide(b, c, q) && c.total_degree() > best.total_degree()) best = c;
  }
  CHECK(best == P(r, "x"));
  CHECK(gcd(a, b) == best);
}

TEST_CASE("squarefree part") {
  auto r = xy();
  CHECK(squarefree_part(P(r, "x^3*y^2")) == P(r, "x*y"));
  CHECK(squarefree_part(P(r, "x^2-y^2")) == P(r, "x^2-y^2"));
  // Oracle: gcd with both partials of (x-y)^2(x+y)^3 is (x-y)(x+y)^2.
  Polynomial p = P(r, "(x-y)^2*(x+y)^3");
  Polynomial hand = P(r, "(x-y)*(x+y)^2");
  CHECK(divide_exact(p, hand) == P(r, "x^2-y^2"));
  CHECK(squarefree_part(p) == P(r, "x^2-y^2"));
  CHECK_THROWS_AS(squarefree_part(Polynomial(r)), Error);

  auto parts = squarefree_decomposition(p);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == P(r, "1"));
  CHECK(parts[1] == P(r, "x-y"));
  CHECK(parts[2] == P(r, "x+y"));
}

TEST_CASE("parse and print round trip") {
  auto r = make_ring({"x", "y", "z"});
  for (const char* s : {"0", "1", "-1/3", "x^2 - 2*x*y + 1/3*y", "-x*y*z^4 + 7", "(x+1)^3 - 2/5*z"}) {
    Polynomial p = P(r, s);
    CHECK(parse_polynomial(r, to_string(p)) == p);
  }
  CHECK(to_string(P(r, "y + x^2 - 1")) == "x^2 + y - 1");
  CHECK_THROWS_AS(P(r, "2x"), Error);
  CHECK_THROWS_AS(P(r, "x/y"), Error);
  CHECK_THROWS_AS(P(r, "w"), Error);
  CHECK_THROWS_AS(P(r, "x^-1"), Error);
  CHECK_THROWS_AS(P(r, "(x"), Error);
}

TEST_CASE("ring axioms and Leibniz rule on random inputs") {
  std::mt19937_64 rng(7);
  auto r = make_ring({"x", "y", "z"});
  for (int i = 0; i < 60; ++i) {
    Polynomial a = testing::random_polynomial(rng, r, 3, 4);
    Polynomial b = testing::random_polynomial(rng, r, 3, 4);
    Polynomial c = testing::random_polynomial(rng, r, 3, 4);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    for (std::size_t v = 0; v < 3; ++v) CHECK(derive(a * b, v) == a * derive(b, v) + b * derive(a, v));
  }
}

TEST_CASE("gcd divides both arguments on random products") {
  std::mt19937_64 rng(11);
  auto r = make_ring({"x", "y", "z"});
  for (int i = 0; i < 40; ++i) {
    Polynomial common = testing::random_nonzero(rng, r, 2, 3);
    Polynomial a = common * testing::random_nonzero(rng, r, 2, 3);
    Polynomial b = common * testing::random_nonzero(rng, r, 2, 3);
    Polynomial g = gcd(a, b);
    Polynomial q;
    CHECK(try_divide(a, g, q));
    CHECK(try_divide(b, g, q));
    CHECK(try_divide(g, make_monic(common), q));
  }
}

TEST_CASE("squarefree part is stable under powers") {
  std::mt19937_64 rng(13);
  auto r = make_ring({"x", "y"});
  for (int i = 0; i < 20; ++i) {
    Polynomial p = testing::random_nonzero(rng, r, 2, 3);
    if (p.is_constant()) continue;
    Polynomial s = squarefree_part(p);
    Polynomial q;
    CHECK(try_divide(p, s, q));
    for (unsigned k = 1; k <= 4; ++k) CHECK(squarefree_part(pow(p, k)) == s);
  }
}

TEST_CASE("univariate helpers") {
  UPoly p({Rational(-2), Rational(0), Rational(1)});  // X^2 - 2
  CHECK(rational_roots(p).empty());
  UPoly q = UPoly::linear(1) * UPoly::linear(1) * UPoly::linear(Rational(-1, 2));
  auto roots = rational_roots(q);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == std::pair<Rational, int>{Rational(-1, 2), 1});
  CHECK(roots[1] == std::pair<Rational, int>{Rational(1), 2});

  AlgebraicElement sqrt2(std::make_shared<const UPoly>(p), UPoly::monomial(1));
  CHECK((sqrt2 * sqrt2).value() == UPoly::constant(2));
  CHECK((sqrt2.inverse() * sqrt2).value() == UPoly::constant(1));
  CHECK(sqrt2.trace() == 0);
  CHECK((sqrt2 * sqrt2).trace() == 4);
}
