#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "leafmult/ideal/ideal_ops.hpp"
#include "leafmult/poly/parse.hpp"

using namespace leafmult;
using testing::random_nonzero;
using testing::random_polynomial;

namespace {

RingPtr xy() { return make_ring({"x", "y"}); }

Polynomial P(const RingPtr& r, const char* s) { return parse_polynomial(r, s); }

IdealPresentation I(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (const char* s : gens) g.push_back(P(r, s));
  return IdealPresentation(r, std::move(g));
}

std::vector<Polynomial> sorted(std::vector<Polynomial> v) {
  std::sort(v.begin(), v.end(), [](const Polynomial& a, const Polynomial& b) { return to_string(a) < to_string(b); });
  return v;
}

bool same_set(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) { return sorted(a) == sorted(b); }

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  auto [mf, cf] = leading_term(f, order);
  auto [mg, cg] = leading_term(g, order);
  Monomial l = lcm(mf, mg);
  return f.mul_term(l / mf, Rational(1) / cf) - g.mul_term(l / mg, Rational(1) / cg);
}

// Zero-dimensional ideal: x_i^a_i plus lower-degree noise in each generator.
IdealPresentation random_zero_dim(std::mt19937_64& rng, const RingPtr& r, int max_a) {
  std::uniform_int_distribution<int> deg(1, max_a);
  std::vector<Polynomial> gens;
  for (std::size_t v = 0; v < r->size(); ++v) {
    int a = deg(rng);
    Polynomial g = pow(Polynomial::variable(r, v), a);
    if (a > 1) g += random_polynomial(rng, r, a - 1, 2, 2);
    gens.push_back(g);
  }
  return IdealPresentation(r, std::move(gens));
}

std::vector<MonomialOrder> orders(std::size_t n) {
  std::vector<std::size_t> rev(n);
  for (std::size_t i = 0; i < n; ++i) rev[i] = n - 1 - i;
  return {MonomialOrder::degrevlex(n), MonomialOrder::lex(n), MonomialOrder::degrevlex(n).with_priority(rev),
          MonomialOrder::elimination(n, 1)};
}

}  // namespace

TEST_CASE("groebner examples") {
  auto r = xy();
  auto dr = MonomialOrder::degrevlex(2);
  CHECK(same_set(groebner(I(r, {"x", "y"}), dr).basis, {P(r, "x"), P(r, "y")}));
  CHECK(same_set(groebner(I(r, {"x^2+y^2", "x^2-y^2"}), dr).basis, {P(r, "x^2"), P(r, "y^2")}));
  auto unit = groebner(I(r, {"1"}), dr);
  CHECK(unit.is_unit());
  CHECK(same_set(unit.basis, {P(r, "1")}));
  CHECK_THROWS_AS(groebner(I(r, {"x"}), MonomialOrder::local_negdegrevlex(2)), Error);
}

TEST_CASE("groebner budget error carries partial basis") {
  auto r = make_ring({"x", "y", "z"});
  GroebnerOptions tiny{.max_steps = 3};
  try {
    groebner(I(r, {"x^3-y*z^2", "y^3-x*z^2", "z^3-x*y^2+x"}), MonomialOrder::degrevlex(3), tiny);
    FAIL("expected budget error");
  } catch (const BudgetError& e) {
    CHECK(e.code() == ErrorCode::kBudget);
    CHECK(!e.partial_basis().empty());
  }
}

TEST_CASE("normal form examples") {
  auto r = xy();
  auto dr = MonomialOrder::degrevlex(2);
  CHECK(normal_form(P(r, "x^2"), groebner(I(r, {"x"}), dr)).is_zero());
  CHECK(normal_form(P(r, "x+y"), groebner(I(r, {"x-y"}), dr)) == P(r, "2*y"));
  CHECK(normal_form(P(r, "1"), groebner(I(r, {"x", "y"}), dr)) == P(r, "1"));
}

TEST_CASE("radical membership examples") {
  auto r = xy();
  CHECK(radical_membership(P(r, "x"), I(r, {"x^2"})));
  CHECK(!radical_membership(P(r, "y"), I(r, {"x^2"})));
  CHECK(radical_membership(P(r, "x+y"), I(r, {"x^2", "y^2"})));
}

TEST_CASE("leading term ideal examples") {
  auto r = xy();
  CHECK(same_set(leading_term_ideal(I(r, {"x+y^2", "y^3"}), MonomialOrder::lex(2)).generators(),
                 {P(r, "x"), P(r, "y^3")}));
  CHECK(same_set(leading_term_ideal(I(r, {"x", "y"}), MonomialOrder::degrevlex(2)).generators(),
                 {P(r, "x"), P(r, "y")}));
  CHECK(same_set(leading_term_ideal(I(r, {"x^2-y^2"}), MonomialOrder::degrevlex(2)).generators(), {P(r, "x^2")}));
}

TEST_CASE("zero-dimensional multiplicity examples") {
  auto r = xy();
  auto dr = MonomialOrder::degrevlex(2);
  CHECK(multiplicity_zero_dim(I(r, {"x^2", "y^3"}), dr) == std::optional<std::size_t>(6));
  CHECK(multiplicity_zero_dim(I(r, {"x", "y"}), dr) == std::optional<std::size_t>(1));
  CHECK(multiplicity_zero_dim(I(r, {"x^2+y^2", "x^2-y^2"}), dr) == std::optional<std::size_t>(4));
  CHECK(!multiplicity_zero_dim(I(r, {"x*y"}), dr).has_value());
  CHECK(multiplicity_zero_dim(I(r, {"1"}), dr) == std::optional<std::size_t>(0));
}

TEST_CASE("ideal power examples") {
  auto r = xy();
  CHECK(same_set(ideal_power(I(r, {"x", "y"}), 2).generators(), {P(r, "x^2"), P(r, "x*y"), P(r, "y^2")}));
  auto base = I(r, {"x^2+y", "x*y"});
  CHECK(same_set(ideal_power(base, 1).generators(), base.generators()));
  CHECK(same_set(ideal_power(I(r, {"x^2", "y^2"}), 2).generators(), {P(r, "x^4"), P(r, "x^2*y^2"), P(r, "y^4")}));
  CHECK_THROWS_AS(ideal_power(base, 0), Error);
}

TEST_CASE("dimension examples") {
  auto r = xy();
  CHECK(dimension(I(r, {"x"})) == 1);
  CHECK(dimension(I(r, {"x", "y"})) == 0);
  CHECK(dimension(I(r, {"1"})) == -1);
  CHECK(dimension(IdealPresentation(r, {})) == 2);
  auto r3 = make_ring({"x", "y", "z"});
  CHECK(dimension(I(r3, {"x*y", "x*z"})) == 2);
  CHECK(dimension(I(r3, {"x^2-y", "z^3-x"})) == 1);
}

TEST_CASE("elimination and intersection") {
  auto r = make_ring({"x", "y", "t"});
  auto elim = eliminate(I(r, {"x-t^2", "y-t^3"}), {2});
  CHECK(same_set(elim.generators(), {P(r, "x^3-y^2")}));
  auto r2 = xy();
  auto meet = intersect(I(r2, {"x"}), I(r2, {"y"}));
  CHECK(same_set(meet.generators(), {P(r2, "x*y")}));
  auto meet2 = intersect(I(r2, {"x^2", "y"}), I(r2, {"x", "y^2"}));
  CHECK(contains(meet2, I(r2, {"x^2", "x*y", "y^2"})));
  CHECK(contains(I(r2, {"x^2", "x*y", "y^2"}), meet2));
}

TEST_CASE("nullstellensatz exponent search") {
  auto r = xy();
  auto gb = groebner(I(r, {"x^2", "y^2"}), MonomialOrder::degrevlex(2));
  CHECK(nullstellensatz_exponent(P(r, "x"), gb, 64) == std::optional<unsigned>(2));
  CHECK(nullstellensatz_exponent(P(r, "x+y"), gb, 64) == std::optional<unsigned>(3));
  CHECK(nullstellensatz_exponent(P(r, "x^2"), gb, 64) == std::optional<unsigned>(1));
  CHECK(!nullstellensatz_exponent(P(r, "x+1"), gb, 64).has_value());
  auto gb7 = groebner(I(r, {"x^7"}), MonomialOrder::degrevlex(2));
  CHECK(nullstellensatz_exponent(P(r, "x"), gb7, 64) == std::optional<unsigned>(7));
  CHECK(!nullstellensatz_exponent(P(r, "x"), gb7, 6).has_value());
  // Oracle: the least e found by linear scan.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto ideal = random_zero_dim(rng, r, 3);
    auto g = groebner(ideal, MonomialOrder::degrevlex(2));
    Polynomial f = random_nonzero(rng, r, 2, 3);
    std::optional<unsigned> linear;
    for (unsigned e = 1; e <= 20; ++e)
      if (is_member(pow(f, e), g)) {
        linear = e;
        break;
      }
    CHECK(nullstellensatz_exponent(f, g, 20) == linear);
  }
}

TEST_CASE("attempt_radical examples") {
  auto r = xy();
  auto a = attempt_radical(I(r, {"x^2"}));
  CHECK(a.status == RadicalResult::Status::kExact);
  CHECK(same_set(a.radical.generators(), {P(r, "x")}));
  REQUIRE(a.certificate.entries.size() == 1);
  CHECK(a.certificate.entries[0].exponent == std::optional<unsigned>(2));

  auto b = attempt_radical(I(r, {"x^2", "y^2"}));
  CHECK(b.status == RadicalResult::Status::kExact);
  CHECK(same_set(b.radical.generators(), {P(r, "x"), P(r, "y")}));

  auto c = attempt_radical(I(r, {"x^2*(x-y^2)^2"}));
  CHECK(c.status == RadicalResult::Status::kExact);
  REQUIRE(c.radical.generators().size() == 1);
  CHECK(c.radical.generators()[0] * Rational(-1) == P(r, "x*(x-y^2)"));

  auto d = attempt_radical(IdealPresentation(r, {}));
  CHECK(d.status == RadicalResult::Status::kExact);
  CHECK(d.radical.is_zero());

  auto e = attempt_radical(I(r, {"x^2*y", "x*y^2"}));
  CHECK(e.status == RadicalResult::Status::kExact);
  CHECK(same_set(e.radical.generators(), {P(r, "x*y")}));

  // Variables absent from the ideal are dropped and restored.
  auto xyz = make_ring({"x", "y", "z"});
  auto f = attempt_radical(I(xyz, {"x^2 - x*y^2", "x^2 - 2*x*y^2"}));
  CHECK(f.status == RadicalResult::Status::kExact);
  CHECK(same_set(f.radical.generators(), {P(xyz, "x")}));
  CHECK(f.radical.ring() == xyz);
}

TEST_CASE("property: reduced groebner bases are closed under S-polynomials") {
  std::mt19937_64 rng(1);
  auto r = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_nonzero(rng, r, 3, 3));
    for (const auto& order : orders(3)) {
      auto gb = groebner(IdealPresentation(r, gens), order);
      for (std::size_t i = 0; i < gb.basis.size(); ++i) {
        auto [mi, ci] = leading_term(gb.basis[i], order);
        CHECK(ci == 1);
        for (std::size_t j = 0; j < gb.basis.size(); ++j) {
          if (i == j) continue;
          auto mj = leading_term(gb.basis[j], order).first;
          for (const auto& [m, c] : gb.basis[i].terms()) CHECK(!mj.divides(m));
          if (j > i) CHECK(normal_form(s_polynomial(gb.basis[i], gb.basis[j], order), gb).is_zero());
        }
      }
      for (const auto& g : gens) CHECK(is_member(g, gb));
    }
  }
}

TEST_CASE("property: normal form vanishes exactly on certified combinations") {
  std::mt19937_64 rng(2);
  auto r = xy();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Polynomial> gens{random_nonzero(rng, r, 2, 3), random_nonzero(rng, r, 2, 3)};
    auto gb = groebner(IdealPresentation(r, gens), MonomialOrder::degrevlex(2));
    Polynomial combo = random_polynomial(rng, r, 2, 3) * gens[0] + random_polynomial(rng, r, 2, 3) * gens[1];
    CHECK(normal_form(combo, gb).is_zero());
    Polynomial f = random_polynomial(rng, r, 3, 4);
    Polynomial nf = normal_form(f, gb);
    CHECK(normal_form(f - nf, gb).is_zero());
    CHECK(normal_form(nf, gb) == nf);
    // Non-members stay non-members under any order.
    auto gb_lex = groebner(IdealPresentation(r, gens), MonomialOrder::lex(2));
    CHECK(nf.is_zero() == normal_form(f, gb_lex).is_zero());
  }
}

TEST_CASE("property: multiplicity equals that of the leading term ideal") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {2u, 3u}) {
    auto r = n == 2 ? xy() : make_ring({"x", "y", "z"});
    for (int trial = 0; trial < 20; ++trial) {
      auto k = random_zero_dim(rng, r, 3);
      auto reference = multiplicity_zero_dim(k, MonomialOrder::degrevlex(n));
      REQUIRE(reference.has_value());
      for (const auto& order : orders(n)) {
        auto m = multiplicity_zero_dim(k, order);
        CHECK(m == reference);
        CHECK(multiplicity_zero_dim(leading_term_ideal(k, order), order) == m);
      }
    }
  }
}

TEST_CASE("property: LT(K)^n inside LT(K^n)") {
  std::mt19937_64 rng(4);
  auto r = xy();
  for (int trial = 0; trial < 20; ++trial) {
    IdealPresentation k(r, {random_nonzero(rng, r, 2, 3), random_nonzero(rng, r, 2, 3)});
    for (unsigned n = 1; n <= 3; ++n) {
      for (const auto& order : {MonomialOrder::degrevlex(2), MonomialOrder::lex(2)}) {
        auto lhs = ideal_power(leading_term_ideal(k, order), n);
        auto rhs = groebner(leading_term_ideal(ideal_power(k, n), order), order);
        for (const auto& g : lhs.generators()) CHECK(is_member(g, rhs));
      }
    }
  }
}

TEST_CASE("property: K' containing K^n has multiplicity at most n^m mult K") {
  std::mt19937_64 rng(5);
  for (std::size_t m : {1u, 2u, 3u}) {
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(m);
    auto r = make_ring(names);
    auto dr = MonomialOrder::degrevlex(m);
    for (int trial = 0; trial < 12; ++trial) {
      auto k = random_zero_dim(rng, r, 2);
      unsigned n = 1 + trial % 3;
      auto kn = ideal_power(k, n);
      auto kn_gb = groebner(kn, dr);
      std::vector<Polynomial> gens = kn.generators();
      // Extra generators drawn from K (so K^n is still contained).
      for (int e = 0; e < 2; ++e) {
        Polynomial extra = random_polynomial(rng, r, 1, 2) * k.generators()[e % k.generators().size()];
        gens.push_back(extra);
      }
      IdealPresentation k_prime(r, gens);
      for (const auto& g : kn.generators()) CHECK(contains(k_prime, IdealPresentation(r, {g})));
      auto mk = multiplicity_zero_dim(k, dr);
      auto mkp = multiplicity_zero_dim(k_prime, dr);
      REQUIRE(mk.has_value());
      REQUIRE(mkp.has_value());
      std::size_t bound = *mk;
      for (std::size_t i = 0; i < m; ++i) bound *= n;
      CHECK(*mkp <= bound);
      CHECK(is_member(kn.generators()[0], kn_gb));
    }
  }
}

TEST_CASE("property: attempt_radical inclusions and exact probes") {
  std::mt19937_64 rng(6);
  auto r = xy();
  int exact = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Polynomial> gens;
    Polynomial base = random_nonzero(rng, r, 2, 2);
    gens.push_back(base * base * random_nonzero(rng, r, 1, 2));
    if (trial % 2) gens.push_back(base * random_nonzero(rng, r, 2, 2));
    if (trial % 3 == 0) gens.push_back(pow(random_nonzero(rng, r, 1, 2), 2));
    IdealPresentation ideal(r, gens);
    RadicalResult res = attempt_radical(ideal);
    auto gb_j = groebner(res.radical, MonomialOrder::degrevlex(2));
    auto gb_i = groebner(ideal, MonomialOrder::degrevlex(2));
    for (const auto& g : ideal.generators()) CHECK(is_member(g, gb_j));
    for (const auto& entry : res.certificate.entries) {
      CHECK(radical_membership(entry.generator, ideal));
      if (entry.exponent) CHECK(is_member(pow(entry.generator, *entry.exponent), gb_i));
    }
    if (res.status != RadicalResult::Status::kExact) continue;
    ++exact;
    for (int probe = 0; probe < 4; ++probe) {
      Polynomial f = random_polynomial(rng, r, 2, 3);
      if (probe == 0 && !res.radical.is_zero()) f = res.radical.generators()[0] * random_polynomial(rng, r, 1, 2);
      if (probe == 1) f = base;
      CHECK(radical_membership(f, ideal) == is_member(f, gb_j));
    }
  }
  CHECK(exact > 0);
}
