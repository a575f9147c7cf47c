#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "leafmult/error.hpp"
#include "leafmult/foliation/foliation.hpp"
#include "leafmult/germ/local_basis.hpp"
#include "leafmult/germ/puiseux.hpp"
#include "leafmult/germ/split.hpp"
#include "leafmult/ideal/ideal_ops.hpp"
#include "leafmult/poly/parse.hpp"

using namespace leafmult;

namespace {

Polynomial T(const char* s) { return parse_polynomial(leaf_ring(), s); }

Jet2 J(const Polynomial& p) { return Jet2::from_polynomial(p, std::max(p.total_degree(), 0)); }
Jet2 J(const char* s) { return J(T(s)); }

// Full polynomial of an exact jet.
Polynomial full(const Jet2& j) {
  REQUIRE(j.is_exact());
  Polynomial p(leaf_ring());
  for (const auto& [k, c] : j.exact_terms()) {
    Monomial m(2);
    m[0] = k.first;
    m[1] = k.second;
    p.add_term(m, c);
  }
  return p;
}

bool same_up_to_scalar(const Jet2& a, const char* b) { return make_monic(full(a)) == make_monic(T(b)); }

std::size_t mult(const char* f, const char* g) { return local_multiplicity(J(f), J(g)).value.value(); }

// dim Q[t]/(<gens> + m^(N+1)) through a global Groebner basis.
std::size_t truncated_dimension_oracle(const std::vector<Polynomial>& gens, int N) {
  std::vector<Polynomial> all = gens;
  for (int a = 0; a <= N + 1; ++a) {
    Monomial m(2);
    m[0] = a;
    m[1] = N + 1 - a;
    Polynomial p(leaf_ring());
    p.add_term(m, 1);
    all.push_back(p);
  }
  return multiplicity_zero_dim(IdealPresentation(leaf_ring(), all), MonomialOrder::degrevlex(2)).value();
}

Polynomial random_germ(std::mt19937_64& rng, int degree, int terms) {
  for (;;) {
    Polynomial p = testing::random_polynomial(rng, leaf_ring(), degree, terms);
    Polynomial q = p - Polynomial::constant(leaf_ring(), evaluate(p, std::vector<Rational>{0, 0}));
    if (!q.is_zero()) return q;
  }
}

Polynomial random_form(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  Polynomial p(leaf_ring());
  for (int a = 0; a <= degree; ++a) {
    Monomial m(2);
    m[0] = a;
    m[1] = degree - a;
    p.add_term(m, coeff(rng));
  }
  return p;
}

// Every cycle satisfies f(branch) = 0 to its precision, and the product of
// the class factors divides f in the chart.
void check_reconstruction(const Jet2& f, const PuiseuxBranchSet& bs) {
  Jet2 fc = apply_chart(f.is_exact() ? f : f.at_order(bs.jet_order), bs.chart);
  for (const auto& c : bs.cycles) {
    CycleSubstitution sub = substitute_cycle(c, fc);
    CHECK(sub.precision > 0);
    for (const auto& v : sub.coeffs) CHECK(v.is_zero());
  }
  CHECK(bs.branch_degree() == bs.fibre_degree);
  YPoly w = branch_product(bs.cycles, 6);
  WeierstrassDivision div = weierstrass_divide(to_ypoly(fc), w);
  for (const auto& r : div.remainder.coef) CHECK(r.known_zero());
}

}  // namespace

TEST_CASE("local multiplicity catalog") {
  CHECK(mult("t1", "t2") == 1);
  CHECK(mult("t1^2", "t2^3") == 6);
  CHECK(mult("t2^2 - t1^3", "t2") == 3);
  CHECK(mult("t1 - t2^2", "t1 - 2*t2^2") == 2);
  CHECK(mult("1 + t1", "t2") == 0);

  LocalMultiplicity lm = local_multiplicity(J("t1^2"), J("t2^3"));
  CHECK(lm.certificate.method == "standard basis");
  CHECK(lm.certificate.dim_at_order == lm.certificate.dim_at_next);
  CHECK(lm.certificate.staircase_degree < lm.certificate.order);
  CHECK(lm.certificate.staircase.size() == 6);

  LocalMultiplicity inf = local_multiplicity(J("t1*(t1 - t2^2)"), J("t1*(t1 - 2*t2^2)"));
  CHECK_FALSE(inf.finite());
  CHECK(inf.certificate.witness == "t1");
  // A common factor away from the origin does not make the value infinite.
  CHECK(mult("(1 + t1)*t1", "(1 + t1)*t2") == 1);
}

TEST_CASE("local multiplicity of series germs") {
  auto r = make_ring({"x", "y", "z"});
  auto ctx = FoliationContext::create(VectorField(r, {parse_polynomial(r, "1"), parse_polynomial(r, "0"),
                                                      parse_polynomial(r, "z")}),
                                      VectorField(r, {parse_polynomial(r, "0"), parse_polynomial(r, "1"),
                                                      parse_polynomial(r, "0")}),
                                      {0, 0, 1});
  // e^t1 - 1 against t2^2 - t1^3: one t1, so the value is 2.
  Jet2 a = leaf_jet(ctx, parse_polynomial(r, "z - 1"), 4);
  CHECK_FALSE(a.is_exact());
  CHECK(local_multiplicity(a, J("t2^2 - t1^3")).value == 2);
  // e^t1 - 1 - t1 = t1^2/2 + ...; against t2 gives 2.
  Jet2 b = leaf_jet(ctx, parse_polynomial(r, "z - 1 - x"), 3);
  CHECK(local_multiplicity(b, J("t2")).value == 2);
  // Same germ twice: infinite through a common branch.
  LocalMultiplicity inf = local_multiplicity(a, a * J("1 + t2"));
  CHECK_FALSE(inf.finite());
  CHECK(inf.certificate.method == "common branch (order-limited)");
  // No producer and no stabilization at the stored order.
  Jet2 frozen(2);
  frozen.set(2, 0, 1);
  CHECK_THROWS_AS(local_multiplicity(frozen, J("t2")), Error);
}

TEST_CASE("local multiplicity agrees with truncated global dimension") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    Polynomial f = random_germ(rng, 3, 4), g = random_germ(rng, 3, 4);
    LocalMultiplicity lm = local_multiplicity(J(f), J(g));
    if (!lm.finite()) {
      CHECK_FALSE(gcd(f, g).is_constant());
      continue;
    }
    const int N = lm.certificate.order;
    CHECK(truncated_dimension_oracle({f, g}, N) == *lm.value);
    CHECK(truncated_dimension_oracle({f, g}, N + 3) == *lm.value);
    CHECK(local_multiplicity(J(g), J(f)).value == lm.value);
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("homogeneous pairs: local equals global equals the degree product") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    std::uniform_int_distribution<int> deg(1, 4);
    Polynomial f = random_form(rng, deg(rng)), g = random_form(rng, deg(rng));
    if (f.is_zero() || g.is_zero() || !gcd(f, g).is_constant()) continue;
    auto global = multiplicity_zero_dim(IdealPresentation(leaf_ring(), {f, g}), MonomialOrder::degrevlex(2));
    REQUIRE(global.has_value());
    // Only the origin is a common zero of two coprime forms.
    CHECK(*global == static_cast<std::size_t>(f.total_degree() * g.total_degree()));
    CHECK(local_multiplicity(J(f), J(g)).value == global);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("additivity in the second argument") {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    Polynomial f = random_germ(rng, 3, 3), g1 = random_germ(rng, 2, 3), g2 = random_germ(rng, 2, 3);
    auto a = local_multiplicity(J(f), J(g1)), b = local_multiplicity(J(f), J(g2));
    if (!a.finite() || !b.finite()) continue;
    CHECK(local_multiplicity(J(f), J(g1 * g2)).value == *a.value + *b.value);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("local membership") {
  std::vector<Jet2> gens{J("t1 - t2^2"), J("t1 - 2*t2^2")};
  CHECK(local_membership(J("t2^2"), gens));
  CHECK(local_membership(J("t1"), gens));
  CHECK_FALSE(local_membership(J("t2"), gens));
  // A unit times a member is a member; a unit is not.
  CHECK(local_membership(J("(1 + t2)*t1"), gens));
  CHECK_FALSE(local_membership(J("1 + t1"), gens));
}

TEST_CASE("truncated standard basis") {
  TruncatedStandardBasis sb = truncated_standard_basis({J("t1^2"), J("t2^3")}, 6);
  CHECK(sb.staircase.size() == 6);
  CHECK_FALSE(sb.contains_unit);
  CHECK(truncated_standard_basis({J("1 + t1")}, 3).contains_unit);
  // Unit multiples reduce to zero.
  CHECK(truncated_normal_form(J("t1^2*(1 + t2) + t2^3*t1"), sb).empty());
  CHECK_FALSE(truncated_normal_form(J("t1*t2"), sb).empty());
}

TEST_CASE("Newton-Puiseux examples") {
  SUBCASE("cusp") {
    PuiseuxBranchSet bs = newton_puiseux(J("t2^2 - t1^3"));
    REQUIRE(bs.cycles.size() == 1);
    CHECK(bs.cycles[0].ramification == 2);
    CHECK(bs.cycles[0].multiplicity == 1);
    CHECK(bs.cycles[0].first_slope == Rational(3, 2));
    CHECK(bs.mu == 2);
    check_reconstruction(J("t2^2 - t1^3"), bs);
  }
  SUBCASE("two lines") {
    PuiseuxBranchSet bs = newton_puiseux(J("t2^2 - t1^2"));
    REQUIRE(bs.cycles.size() == 2);
    for (const auto& c : bs.cycles) {
      CHECK(c.ramification == 1);
      CHECK(c.is_rational());
    }
    CHECK(bs.mu == 2);
    check_reconstruction(J("t2^2 - t1^2"), bs);
  }
  SUBCASE("double line") {
    PuiseuxBranchSet bs = newton_puiseux(J("t2^2"));
    REQUIRE(bs.cycles.size() == 1);
    CHECK(bs.cycles[0].multiplicity == 2);
    CHECK(bs.mu == 2);
    CHECK(bs.branch_degree() == 2);
  }
  SUBCASE("conjugate lines stay one class") {
    PuiseuxBranchSet bs = newton_puiseux(J("t2^2 - 2*t1^2"));
    REQUIRE(bs.cycles.size() == 1);
    CHECK(bs.cycles[0].class_degree() == 2);
    CHECK(bs.cycles[0].branch_count() == 2);
    check_reconstruction(J("t2^2 - 2*t1^2"), bs);
  }
  SUBCASE("tangency needs a second edge") {
    // (t2 - t1^2)(t2 - t1^2 - t1^3): a repeated edge root resolved one level down.
    const char* f = "(t2 - t1^2)*(t2 - t1^2 - t1^3)";
    PuiseuxBranchSet bs = newton_puiseux(J(f));
    CHECK(bs.cycles.size() == 2);
    check_reconstruction(J(f), bs);
  }
  SUBCASE("repeated factors from the squarefree split") {
    PuiseuxBranchSet bs = newton_puiseux(J("(t2^2 - t1^3)^2*(t2 - t1)"));
    CHECK(bs.chart.is_identity());
    REQUIRE(bs.cycles.size() == 2);
    int mults = 0;
    for (const auto& c : bs.cycles) mults += c.multiplicity * c.branch_count();
    CHECK(mults == bs.fibre_degree);
  }
  SUBCASE("chart change for a germ vanishing on the t2 axis") {
    PuiseuxBranchSet bs = newton_puiseux(J("t1*(t1 - t2^2)"));
    CHECK_FALSE(bs.chart.is_identity());
    CHECK(bs.branch_degree() == bs.fibre_degree);
    check_reconstruction(J("t1*(t1 - t2^2)"), bs);
  }
  SUBCASE("units have no branches") {
    CHECK(newton_puiseux(J("1 + t1")).cycles.empty());
  }
}

TEST_CASE("Newton-Puiseux on series germs") {
  auto r = make_ring({"x", "y", "z"});
  auto ctx = FoliationContext::create(VectorField(r, {parse_polynomial(r, "1"), parse_polynomial(r, "0"),
                                                      parse_polynomial(r, "z")}),
                                      VectorField(r, {parse_polynomial(r, "0"), parse_polynomial(r, "1"),
                                                      parse_polynomial(r, "0")}),
                                      {0, 0, 1});
  // (e^t1 - 1)^2 - t2^3 has one cusp-like class of ramification 3.
  Jet2 a = leaf_jet(ctx, parse_polynomial(r, "(z - 1)^2 - y^3"), 4);
  PuiseuxBranchSet bs = newton_puiseux(a);
  REQUIRE(bs.cycles.size() == 1);
  CHECK(bs.cycles[0].ramification * bs.cycles[0].class_degree() == bs.fibre_degree);
  check_reconstruction(a, bs);

  // t2^2 + O(4) cannot separate a double line from two close branches.
  Jet2 frozen(3);
  frozen.set(0, 2, 1);
  try {
    newton_puiseux(frozen);
    FAIL("expected an inconclusive expansion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInconclusive);
  }
}

TEST_CASE("cycle tools") {
  PuiseuxBranchSet bs = newton_puiseux(J("(t2^2 - 2*t1^2)*(t2 - t1^2)"));
  REQUIRE(bs.cycles.size() == 2);
  const PuiseuxCycle* irr = nullptr;
  for (const auto& c : bs.cycles)
    if (!c.is_rational()) irr = &c;
  REQUIRE(irr);
  // The class lies on its own defining germ and off the other factor.
  UPoly f = vanishing_factor(*irr, apply_chart(J("t2^2 - 2*t1^2"), bs.chart));
  CHECK(f == monic(*irr->modulus));
  CHECK(vanishing_factor(*irr, apply_chart(J("t2 - t1^2"), bs.chart)).degree() == 0);
  UPoly lin = UPoly::linear(Rational(1));
  CHECK_THROWS_AS(restrict_cycle(*irr, lin), Error);
  CHECK_FALSE(irr->describe().empty());
}

TEST_CASE("split_common examples") {
  GermSplit s = split_common(J("t1*(t1 - t2^2)"), J("t1*(t1 - 2*t2^2)"));
  CHECK(s.exact);
  CHECK(same_up_to_scalar(s.h_f, "t1"));
  CHECK(same_up_to_scalar(s.h_g, "t1"));
  CHECK(same_up_to_scalar(s.f, "t1 - t2^2"));
  CHECK(same_up_to_scalar(s.g, "t1 - 2*t2^2"));

  s = split_common(J("t1^2*t2"), J("t1*t2^2"));
  CHECK(same_up_to_scalar(s.h_f, "t1^2*t2"));
  CHECK(same_up_to_scalar(s.h_g, "t1*t2^2"));
  CHECK(same_up_to_scalar(s.f, "1"));
  CHECK(same_up_to_scalar(s.g, "1"));

  s = split_common(J("t1"), J("t2"));
  CHECK(same_up_to_scalar(s.h_f, "1"));
  CHECK(same_up_to_scalar(s.f, "t1"));
  CHECK(same_up_to_scalar(s.g, "t2"));

  // A common factor that is a unit at the origin stays in f and g.
  s = split_common(J("(1 + t1)*t1"), J("(1 + t1)*t2"));
  CHECK(same_up_to_scalar(s.h_f, "1"));
}

TEST_CASE("split_common contract on random polynomial pairs") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 30; ++i) {
    Polynomial common = random_germ(rng, 2, 2);
    Polynomial f = common * random_germ(rng, 2, 3), g = common * random_germ(rng, 2, 3);
    GermSplit s = split_common(J(f), J(g));
    CHECK(full(s.h_f) * full(s.f) == f);
    CHECK(full(s.h_g) * full(s.g) == g);
    CHECK(local_multiplicity(s.f, s.g).finite());
  }
}

TEST_CASE("split_common on series germs") {
  auto r = make_ring({"x", "y", "z"});
  auto ctx = FoliationContext::create(VectorField(r, {parse_polynomial(r, "1"), parse_polynomial(r, "0"),
                                                      parse_polynomial(r, "z")}),
                                      VectorField(r, {parse_polynomial(r, "0"), parse_polynomial(r, "1"),
                                                      parse_polynomial(r, "0")}),
                                      {0, 0, 1});
  // z - 1 = e^t1 - 1 vanishes exactly on t1 = 0.
  Jet2 fL = leaf_jet(ctx, parse_polynomial(r, "(z - 1)*(x - y^2)"), 6);
  Jet2 gL = leaf_jet(ctx, parse_polynomial(r, "(z - 1)*(x - 2*y^2)"), 6);
  GermSplit s = split_common(fL, gL);
  CHECK(s.method == "branch matching");
  REQUIRE(s.certified_order >= 2);
  const int n = s.certified_order;
  CHECK((s.h_f * s.f).truncated(n) == fL.at_order(n));
  CHECK((s.h_g * s.g).truncated(n) == gL.at_order(n));
  CHECK(local_multiplicity(s.f, s.g).value == 2);
  // h_f is t1 times a unit.
  CHECK(local_multiplicity(s.h_f, J("t2")).value == 1);
  CHECK(s.h_f.coeff(0, 1) == 0);
}

TEST_CASE("factor_multiplicities examples") {
  FactorMultiplicities fm = factor_multiplicities(J("t1^2*(t1 - t2^2)"));
  CHECK(fm.k == 1);
  CHECK(fm.K == 2);
  CHECK(same_up_to_scalar(fm.reduced, "t1*(t1 - t2^2)"));
  CHECK(fm.branch_count == 3);

  fm = factor_multiplicities(J("t1"));
  CHECK(fm.k == 1);
  CHECK(fm.K == 1);
  CHECK(same_up_to_scalar(fm.reduced, "t1"));

  fm = factor_multiplicities(J("(t2^2 - t1^3)^2"));
  CHECK(fm.k == 2);
  CHECK(fm.K == 2);
  CHECK(same_up_to_scalar(fm.reduced, "t2^2 - t1^3"));
  CHECK(fm.branch_count == 2);
  Polynomial q;
  CHECK(try_divide(pow(T("t2^2 - t1^3"), 2), T("(t2^2 - t1^3)^2"), q));

  CHECK_THROWS_AS(factor_multiplicities(J("1 + t1")), Error);
}

TEST_CASE("factor_multiplicities contract on random products") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    Polynomial a = random_germ(rng, 2, 2), b = random_germ(rng, 2, 2);
    Polynomial h = a * a * b;
    FactorMultiplicities fm = factor_multiplicities(J(h));
    Polynomial reduced = full(fm.reduced);
    CHECK(squarefree_part(reduced) == make_monic(reduced));
    // h with its unit levels dropped divides reduced^K.
    Polynomial h0 = Polynomial::constant(leaf_ring(), 1);
    auto levels = squarefree_decomposition(h);
    for (std::size_t m = 0; m < levels.size(); ++m)
      if (evaluate(levels[m], std::vector<Rational>{0, 0}) == 0) h0 = h0 * pow(levels[m], static_cast<unsigned>(m + 1));
    Polynomial q;
    CHECK(try_divide(pow(reduced, static_cast<unsigned>(fm.K)), h0, q));
    CHECK(fm.K >= 2);
  }
}
