#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "leafmult/error.hpp"
#include "leafmult/germ/local_basis.hpp"
#include "leafmult/ideal/ideal_ops.hpp"
#include "leafmult/pairs/pairs.hpp"
#include "leafmult/poly/parse.hpp"

using namespace leafmult;

namespace {

RingPtr xyz() {
  static const RingPtr r = make_ring({"x", "y", "z"});
  return r;
}

Polynomial P(const char* s) { return parse_polynomial(xyz(), s); }
Polynomial T(const char* s) { return parse_polynomial(leaf_ring(), s); }
Jet2 J(const char* s) {
  Polynomial p = T(s);
  return Jet2::from_polynomial(p, std::max(p.total_degree(), 0));
}

IdealPresentation I(std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (const char* s : gens) g.push_back(P(s));
  return IdealPresentation(xyz(), g);
}

VectorField V(std::initializer_list<const char*> comps) {
  std::vector<Polynomial> c;
  for (const char* s : comps) c.push_back(P(s));
  return VectorField(xyz(), c);
}

ContextPtr flat() { return FoliationContext::create(V({"1", "0", "0"}), V({"0", "1", "0"}), {0, 0, 0}); }
ContextPtr e2() { return FoliationContext::create(V({"1", "0", "z"}), V({"0", "1", "0"}), {0, 0, 1}); }

bool same_ideal(const IdealPresentation& a, const IdealPresentation& b) { return contains(a, b) && contains(b, a); }

std::size_t local_mult(const std::vector<Jet2>& gens) { return local_multiplicity(gens).value.value(); }

// Pair invariant re-checked from scratch.
void check_pair(const NoetherianPairState& s) {
  CHECK_NOTHROW(make_pair(s.global, s.local, s.ctx, s.certificate_order));
}

}  // namespace

TEST_CASE("make_pair examples") {
  auto ctx = flat();
  CHECK_NOTHROW(make_pair(I({"x*(x-y^2)", "x*(x-2*y^2)"}),
                          {leaf_jet(ctx, P("x*(x-y^2)"), 8), leaf_jet(ctx, P("x*(x-2*y^2)"), 8)}, ctx, 8));
  try {
    make_pair(I({"x"}), {J("t1^2")}, ctx, 8);
    FAIL("expected a rejected pair");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kHypothesis);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
  CHECK_NOTHROW(make_pair(IdealPresentation(xyz(), {}), {J("t1^2")}, ctx, 8));
  CHECK_NOTHROW(make_pair(IdealPresentation(xyz(), {}), {}, ctx, 8));
}

TEST_CASE("radical_extension examples") {
  auto ctx = flat();
  auto s = make_pair(I({"x^2"}), {J("t1^2")}, ctx, 8);
  auto [t, step] = radical_extension(s);
  CHECK(same_ideal(t.global, I({"x"})));
  CHECK(step.transfer.a == 4);
  CHECK(step.transfer.b == 0);
  CHECK(step.sound);
  check_pair(t);

  auto u = make_pair(I({"x", "y"}), {J("t1"), J("t2")}, ctx, 8);
  auto [u2, ustep] = radical_extension(u);
  CHECK(ustep.transfer.a == 1);
  CHECK(ustep.local_added.empty());

  auto w = make_pair(I({"x^2", "y^2"}), {J("t1^2"), J("t2^2")}, ctx, 8);
  auto [w2, wstep] = radical_extension(w);
  CHECK(same_ideal(w2.global, I({"x", "y"})));
  CHECK(wstep.transfer.a == 9);
  check_pair(w2);
  // The transfer is sound: mult <t1^2, t2^2> = 4 <= 9 * mult <t1, t2>.
  CHECK(local_mult(w.local) <= wstep.transfer.apply(local_mult(w2.local)));
}

TEST_CASE("poisson_extension examples") {
  auto ctx = flat();
  auto s = make_pair(I({"x", "y"}), {J("t1"), J("t2")}, ctx, 8);
  auto [t, step] = poisson_extension(s, P("x"), P("y"));
  CHECK(step.transfer.a == 1);
  CHECK(step.transfer.b == 1);
  CHECK(point_excluded(t));
  CHECK(same_ideal(t.global, I({"1"})));

  auto [t2, step2] = poisson_extension(s, P("x"), P("x"));
  CHECK(step2.poisson_bracket == "0");
  CHECK(t2.global.generators().size() == s.global.generators().size());
  CHECK(step2.transfer.b == 1);

  auto w = make_pair(I({"x^2", "y^2"}), {J("t1^2"), J("t2^2")}, ctx, 8);
  auto [w2, wstep] = poisson_extension(w, P("x^2"), P("y^2"));
  CHECK(P(wstep.poisson_bracket.c_str()) == P("4*x*y"));
  CHECK(w2.local.back().to_polynomial(leaf_ring()) == T("4*t1*t2"));
  check_pair(w2);
  CHECK(local_mult(w.local) == 4);
  CHECK(local_mult(w2.local) == 3);
  CHECK(local_mult(w.local) <= wstep.transfer.apply(local_mult(w2.local)));

  CHECK_THROWS_AS(poisson_extension(s, P("z"), P("x")), Error);
}

TEST_CASE("jacobian_extension examples") {
  auto ctx = flat();
  // I = <x> radical; the local ideal holds f = t1 - t2^2 and, for a valid pair, t1.
  auto s = make_pair(I({"x"}), {J("t1 - t2^2"), J("t1")}, ctx, 8);
  s.radical_certified = true;
  auto [t, step] = jacobian_extension(s, P("x*(x-y^2)"));
  CHECK(step.jacobian_h == "t1");
  CHECK(step.jacobian_h_reduced == "t1");
  CHECK(step.jacobian_k == 1);
  CHECK(step.jacobian_K == 1);
  CHECK(step.jacobian_formula_factor == 2);
  CHECK(step.jacobian_certified_exponent == std::optional<unsigned>(1));
  CHECK(step.transfer.a == 1);
  CHECK(step.strict_progress);
  CHECK(same_ideal(t.global, I({"x", "2*x - y^2", "-2*x*y"})));
  check_pair(t);

  auto s2 = make_pair(I({"x"}), {J("t1 - t2^2"), J("t1")}, ctx, 8);
  s2.radical_certified = true;
  auto [t2, step2] = jacobian_extension(s2, P("x^2*(x-y^2)"));
  CHECK(step2.jacobian_K == 2);
  CHECK(step2.jacobian_k == 2);
  CHECK(step2.jacobian_formula_factor == 8);
  CHECK(step2.jacobian_mu == 2);
  CHECK(step2.strict_progress);
  check_pair(t2);

  auto unrad = make_pair(I({"x^2"}), {J("t1")}, ctx, 8);
  CHECK_THROWS_AS(jacobian_extension(unrad, P("x^2")), Error);
}

TEST_CASE("find_transverse_pair examples") {
  auto ctx = flat();
  auto a = find_transverse_pair(make_pair(I({"x", "y"}), {J("t1"), J("t2")}, ctx, 8), 0);
  REQUIRE(a);
  CHECK(poisson(*ctx, a->first, a->second) != Polynomial(xyz()));

  CHECK_FALSE(find_transverse_pair(make_pair(I({"x"}), {J("t1")}, ctx, 8), 0));

  auto s = make_pair(I({"x - y^2", "y - x^2"}), {J("t1 - t2^2"), J("t2 - t1^2")}, ctx, 8);
  auto c = find_transverse_pair(s, 3);
  REQUIRE(c);
  // Oracle: V(I) contains (0,0,0) and (1,1,0); a bracket nonzero at either is outside sqrt(I).
  Polynomial b = poisson(*ctx, c->first, c->second);
  bool off = evaluate(b, std::vector<Rational>{0, 0, 0}) != 0 || evaluate(b, std::vector<Rational>{1, 1, 0}) != 0;
  CHECK(off);
}

TEST_CASE("isolated_locus_reduction examples") {
  auto ctx = flat();
  auto r = isolated_locus_reduction(make_pair(I({"x", "y"}), {J("t1"), J("t2")}, ctx, 8));
  CHECK(r.steps.size() <= 2);
  CHECK(point_excluded(r.state));
  BoundLedger ledger;
  ledger.steps = r.steps;
  CHECK(ledger.compose(0) == 1);

  auto x = isolated_locus_reduction(make_pair(I({"x"}), {J("t1")}, ctx, 8));
  CHECK(x.steps.size() == 1);
  CHECK_FALSE(point_excluded(x.state));
  CHECK(x.state.radical_certified);

  auto x2 = isolated_locus_reduction(make_pair(I({"x^2"}), {J("t1^2")}, ctx, 8));
  REQUIRE(x2.steps.size() == 1);
  CHECK(x2.steps[0].kind == LedgerStep::Kind::kRadical);
  CHECK(same_ideal(x2.state.global, I({"x"})));
}

TEST_CASE("nonisolated_bound examples") {
  auto ctx = flat();
  BoundReport e1 = nonisolated_bound(P("x*(x-y^2)"), P("x*(x-2*y^2)"), ctx);
  CHECK(e1.ledger.status == BoundLedger::Status::kPointExcluded);
  CHECK(e1.direct_value == std::optional<std::uint64_t>(2));
  REQUIRE(e1.bound);
  CHECK(*e1.bound >= 2);
  int jacobians = 0;
  for (const auto& st : e1.ledger.steps)
    if (st.kind == LedgerStep::Kind::kJacobian && st.jacobian_h == "t1") ++jacobians;
  CHECK(jacobians >= 1);

  BoundReport iso = nonisolated_bound(P("x"), P("x + y^2"), ctx);
  CHECK(iso.isolated);
  CHECK(iso.h_f == "1");
  for (const auto& st : iso.ledger.steps) CHECK(st.kind != LedgerStep::Kind::kJacobian);
  REQUIRE(iso.bound);
  CHECK(*iso.direct_value <= *iso.bound);

  try {
    nonisolated_bound(P("x*(x-y^2)"), P("x*(x-y^2)"), ctx);
    FAIL("expected F = G to be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kHypothesis);
  }
}

TEST_CASE("pipeline on the non-algebraic leaf") {
  auto ctx = e2();
  BoundReport r = nonisolated_bound(P("(z-1)*(x-y^2)"), P("(z-1)*(x-2*y^2)"), ctx);
  CHECK_FALSE(r.isolated);
  CHECK(r.ledger.status == BoundLedger::Status::kPointExcluded);
  REQUIRE(r.bound);
  CHECK(r.direct_value == std::optional<std::uint64_t>(2));
  CHECK(*r.direct_value <= *r.bound);
}

TEST_CASE("pair preservation and monotonicity along the E1 chain") {
  auto ctx = flat();
  Polynomial F = P("x*(x-y^2)"), G = P("x*(x-2*y^2)");
  auto s0 = make_pair(IdealPresentation(xyz(), {F, G}), {J("t1 - t2^2"), J("t1 - 2*t2^2")}, ctx, 8);
  std::vector<NoetherianPairState> chain{s0};
  auto [s1, st1] = radical_extension(s0);
  chain.push_back(s1);
  auto [s2, st2] = jacobian_extension(s1, F);
  chain.push_back(s2);
  auto [s3, st3] = radical_extension(s2);
  chain.push_back(s3);
  auto pair = find_transverse_pair(s3, 0);
  REQUIRE(pair);
  auto [s4, st4] = poisson_extension(s3, pair->first, pair->second);
  chain.push_back(s4);
  CHECK(point_excluded(s4));
  for (std::size_t i = 0; i < chain.size(); ++i) {
    check_pair(chain[i]);
    if (i + 1 < chain.size()) {
      CHECK(contains(chain[i + 1].global, chain[i].global));
      LocalMultiplicity lm = local_multiplicity(chain[i + 1].local);
      REQUIRE(lm.finite());
      for (const auto& j : chain[i].local) CHECK(local_membership(j, chain[i + 1].local));
    }
  }
}

TEST_CASE("ledger soundness on random common-factor pairs") {
  std::mt19937_64 rng(77);
  auto ctx = flat();
  auto xy = make_ring({"x", "y"});
  int checked = 0;
  for (int i = 0; i < 25; ++i) {
    Polynomial c = testing::random_polynomial(rng, xy, 2, 2);
    Polynomial a = testing::random_polynomial(rng, xy, 2, 3), b = testing::random_polynomial(rng, xy, 2, 3);
    Polynomial F = (c * a).embed_into(xyz()), G = (c * b).embed_into(xyz());
    if (F.is_zero() || G.is_zero() || evaluate(F, ctx->point()) != 0 || evaluate(G, ctx->point()) != 0) continue;
    try {
      BoundReport r = nonisolated_bound(F, G, ctx);
      if (r.bound && r.direct_value) {
        CHECK(*r.direct_value <= *r.bound);
        ++checked;
      }
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kHypothesis);
    }
  }
  CHECK(checked >= 5);
}

TEST_CASE("composition of transfers") {
  BoundLedger l;
  l.steps.resize(3);
  l.steps[0].transfer = {4, 0};
  l.steps[1].transfer = {1, 1};
  l.steps[2].transfer = {9, 0};
  CHECK(l.compose(0) == 4);
  CHECK(l.compose(2) == 4 * (9 * 2 + 1));
}
