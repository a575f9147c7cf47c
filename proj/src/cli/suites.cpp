#include "leafmult/cli/suites.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "leafmult/error.hpp"
#include "leafmult/foliation/foliation.hpp"
#include "leafmult/germ/local_basis.hpp"
#include "leafmult/ideal/ideal_ops.hpp"
#include "leafmult/poly/parse.hpp"

namespace leafmult {
namespace {

constexpr std::size_t kMaxFailures = 8;
constexpr std::size_t kMaxLocalMultiplicity = 40;
// A staircase of at most 40 monomials has degree below 40, so it certifies by this order.
constexpr int kMaxCertificateOrder = 48;

Polynomial random_polynomial(std::mt19937_64& rng, const RingPtr& ring, int max_degree, int max_terms,
                             int coeff_range = 4) {
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range), nterms(1, max_terms), deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, ring->size() - 1);
  Polynomial p(ring);
  for (int t = nterms(rng); t > 0; --t) {
    Monomial m(ring->size());
    for (int k = deg(rng); k > 0; --k) m[var(rng)] += 1;
    p.add_term(m, coeff(rng));
  }
  return p;
}

Polynomial without_constant(const Polynomial& p, const std::vector<Rational>& at) {
  return p - Polynomial::constant(p.ring(), evaluate(p, at));
}

// Germ at the origin of Q[t1, t2], not a unit, nonzero.
Polynomial random_germ(std::mt19937_64& rng, int degree, int terms) {
  for (;;) {
    Polynomial q = without_constant(random_polynomial(rng, leaf_ring(), degree, terms), {0, 0});
    if (!q.is_zero()) return q;
  }
}

Jet2 exact(const Polynomial& p) { return Jet2::from_polynomial(p, std::max(p.total_degree(), 0)); }

Jet2 jacobian(const Jet2& f, const Jet2& g) { return f.derivative(0) * g.derivative(1) - f.derivative(1) * g.derivative(0); }

// dim Q[t]/(<gens> + m^(N+1)) through a global Groebner basis.
std::size_t truncated_dimension(const std::vector<Jet2>& gens, int N) {
  std::vector<Polynomial> all;
  for (const auto& g : gens) all.push_back(g.at_order(N).to_polynomial(leaf_ring()));
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

// Fresh per suite run so the derivative memo does not grow across runs.
ContextPtr e2_context() {
  RingPtr r = make_ring({"x", "y", "z"});
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  return FoliationContext::create(VectorField(r, {P("1"), P("0"), P("z")}), VectorField(r, {P("0"), P("1"), P("0")}),
                                  {0, 0, 1});
}

std::string describe(const std::vector<Jet2>& gens) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? ", " : "") << to_string(gens[i].to_polynomial(leaf_ring()));
  os << ">";
  return os.str();
}

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    if (ok) return;
    ++r_.violations;
    if (r_.failures.size() < kMaxFailures) r_.failures.push_back(what);
  }

 private:
  SuiteReport& r_;
};

// Finite local multiplicity certified by stabilization and matched against the
// truncated global dimension at the certified order; nullopt for draws to skip.
std::optional<std::size_t> certified_multiplicity(const std::vector<Jet2>& gens, Recorder& rec) {
  LocalMultiplicity lm;
  try {
    LocalMultiplicityOptions options;
    options.max_order = kMaxCertificateOrder;
    lm = local_multiplicity(gens, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInconclusive) return std::nullopt;
    throw;
  }
  if (!lm.finite() || *lm.value > kMaxLocalMultiplicity) return std::nullopt;
  if (lm.certificate.method == "standard basis")
    rec.check(truncated_dimension(gens, lm.certificate.order) == *lm.value,
              "staircase oracle disagrees on " + describe(gens));
  return lm.value;
}

// Two germs of finite multiplicity: polynomial, or leaf jets on the E2 leaf.
std::optional<std::vector<Jet2>> random_finite_ideal(std::mt19937_64& rng, bool on_leaf, Recorder& rec,
                                                     std::size_t& value) {
  std::vector<Jet2> k;
  if (on_leaf) {
    const ContextPtr ctx = e2_context();
    for (int i = 0; i < 2; ++i) {
      Polynomial F = without_constant(random_polynomial(rng, ctx->ring(), 2, 3), ctx->point());
      if (F.is_zero()) return std::nullopt;
      k.push_back(leaf_jet(ctx, F, 8));
    }
  } else {
    k = {exact(random_germ(rng, 3, 3)), exact(random_germ(rng, 3, 3))};
  }
  auto m = certified_multiplicity(k, rec);
  if (!m) return std::nullopt;
  value = *m;
  return k;
}

Jet2 random_coefficient(std::mt19937_64& rng) { return exact(random_polynomial(rng, leaf_ring(), 1, 2)); }

// f^n in K implies mult K <= n mult <K, f>.
void radical_lemma(std::mt19937_64& rng, SuiteReport& r) {
  Recorder rec(r);
  std::size_t mk = 0;
  auto k = random_finite_ideal(rng, r.cases % 2 == 1, rec, mk);
  if (!k || mk == 0) {
    ++r.skipped;
    return;
  }
  Jet2 f = exact(random_germ(rng, 2, 3));
  std::optional<std::size_t> n;
  Jet2 power = f;
  for (std::size_t e = 1; e <= mk; ++e) {
    if (e > 1) power = power * f;
    if (local_membership(power, *k)) {
      n = e;
      break;
    }
  }
  std::vector<Jet2> kf = *k;
  kf.push_back(f);
  auto mkf = certified_multiplicity(kf, rec);
  ++r.cases;
  const std::string what = describe(*k) + ", f = " + to_string(f.to_polynomial(leaf_ring()));
  rec.check(n.has_value(), "no power of f up to mult K lies in K: " + what);
  rec.check(mkf.has_value(), "<K, f> has no certified multiplicity: " + what);
  if (n && mkf) rec.check(mk <= *n * *mkf, "mult K > n mult <K, f>: " + what);
}

// {f, g} is the (t1, t2)-Jacobian: mult K <= mult <K, {f, g}> + 1 for f, g in K.
void poisson_lemma(std::mt19937_64& rng, SuiteReport& r) {
  Recorder rec(r);
  std::size_t mk = 0;
  auto k = random_finite_ideal(rng, r.cases % 2 == 1, rec, mk);
  if (!k) {
    ++r.skipped;
    return;
  }
  Jet2 f = random_coefficient(rng) * (*k)[0] + random_coefficient(rng) * (*k)[1];
  Jet2 g = random_coefficient(rng) * (*k)[0] + random_coefficient(rng) * (*k)[1];
  std::vector<Jet2> kb = *k;
  kb.push_back(jacobian(f, g));
  auto mkb = certified_multiplicity(kb, rec);
  ++r.cases;
  rec.check(mkb.has_value(), "<K, {f, g}> has no certified multiplicity: " + describe(kb));
  if (mkb) rec.check(mk <= *mkb + 1, "mult K > mult <K, {f, g}> + 1: " + describe(kb));
}

RingPtr ring_of(std::size_t m) {
  static const std::vector<RingPtr> rings{make_ring({"x"}), make_ring({"x", "y"}), make_ring({"x", "y", "z"})};
  return rings.at(m - 1);
}

// x_i^a_i plus lower-degree noise in each generator: zero-dimensional.
IdealPresentation random_zero_dim(std::mt19937_64& rng, const RingPtr& ring, int max_a) {
  std::uniform_int_distribution<int> deg(1, max_a);
  std::vector<Polynomial> gens;
  for (std::size_t v = 0; v < ring->size(); ++v) {
    const int a = deg(rng);
    Polynomial g = pow(Polynomial::variable(ring, v), static_cast<unsigned>(a));
    if (a > 1) g += random_polynomial(rng, ring, a - 1, 2, 2);
    gens.push_back(g);
  }
  return IdealPresentation(ring, std::move(gens));
}

std::string describe(const IdealPresentation& I) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < I.generators().size(); ++i) os << (i ? ", " : "") << to_string(I.generators()[i]);
  os << ">";
  return os.str();
}

// K' containing K^n has mult K' <= n^m mult K, m, n <= 3.
void power_lemma(std::mt19937_64& rng, SuiteReport& r) {
  Recorder rec(r);
  const std::size_t m = 1 + r.cases % 3;
  const unsigned n = 1 + static_cast<unsigned>((r.cases / 3) % 3);
  RingPtr ring = ring_of(m);
  const MonomialOrder order = MonomialOrder::degrevlex(m);
  IdealPresentation k = random_zero_dim(rng, ring, m == 3 ? 2 : 3);
  IdealPresentation kn = ideal_power(k, n);
  std::vector<Polynomial> gens = kn.generators();
  std::uniform_int_distribution<int> extras(0, 2);
  for (int e = extras(rng); e > 0; --e) {
    const Polynomial& base = k.generators()[static_cast<std::size_t>(e) % k.generators().size()];
    gens.push_back(random_polynomial(rng, ring, 1, 2) * base);
  }
  if (r.cases % 4 == 3) gens.push_back(random_polynomial(rng, ring, 2, 2));
  IdealPresentation k_prime(ring, gens);
  ++r.cases;
  const std::string what = "K = " + describe(k) + ", n = " + std::to_string(n);
  rec.check(contains(k_prime, kn), "K^n not inside K': " + what);
  auto mk = multiplicity_zero_dim(k, order);
  auto mkp = multiplicity_zero_dim(k_prime, order);
  rec.check(mk.has_value() && mkp.has_value(), "multiplicity not finite: " + what);
  if (!mk || !mkp) return;
  std::size_t bound = *mk;
  for (std::size_t i = 0; i < m; ++i) bound *= n;
  rec.check(*mkp <= bound, "mult K' > n^m mult K: " + what);
}

std::vector<Monomial> monomials(const IdealPresentation& I, const MonomialOrder& order) {
  std::vector<Monomial> out;
  for (const auto& g : I.generators()) out.push_back(leading_term(g, order).first);
  return out;
}

// mult K = mult LT(K) and LT(K)^n inside LT(K^n), by monomial divisibility.
void lt_facts(std::mt19937_64& rng, SuiteReport& r) {
  Recorder rec(r);
  const std::size_t m = 2 + r.cases % 2;
  RingPtr ring = ring_of(m);
  IdealPresentation k = r.cases % 3 == 2
                            ? IdealPresentation(ring, {random_polynomial(rng, ring, 2, 3), random_polynomial(rng, ring, 2, 3)})
                            : random_zero_dim(rng, ring, 2);
  ++r.cases;
  const std::string what = "K = " + describe(k);
  for (const auto& order : {MonomialOrder::degrevlex(m), MonomialOrder::lex(m)}) {
    IdealPresentation lt = leading_term_ideal(k, order);
    auto mk = multiplicity_zero_dim(k, order);
    rec.check(mk == staircase_size(monomials(lt, order), m), "mult K != mult LT(K): " + what);
    for (unsigned n = 2; n <= 3; ++n) {
      std::vector<Monomial> big = monomials(leading_term_ideal(ideal_power(k, n), order), order);
      for (const auto& g : monomials(ideal_power(lt, n), order)) {
        bool inside = false;
        for (const auto& b : big) inside = inside || b.divides(g);
        rec.check(inside, "LT(K)^" + std::to_string(n) + " not inside LT(K^n): " + what);
      }
    }
  }
}

// Morphism, chart and bracket identities of leaf_jet on the E2 leaf.
void foliation_invariants(std::mt19937_64& rng, SuiteReport& r) {
  Recorder rec(r);
  const ContextPtr ctx = e2_context();
  std::uniform_int_distribution<int> order(1, 8);
  const int N = order(rng);
  Polynomial F = random_polynomial(rng, ctx->ring(), 3, 4), G = random_polynomial(rng, ctx->ring(), 3, 4);
  ++r.cases;
  const std::string what = "F = " + to_string(F) + ", G = " + to_string(G) + ", N = " + std::to_string(N);
  Jet2 jf = leaf_jet(ctx, F, N), jg = leaf_jet(ctx, G, N);
  rec.check(leaf_jet(ctx, F * G, N).coefficients() == (jf * jg).truncated(N).coefficients(), "product morphism: " + what);
  rec.check(leaf_jet(ctx, F + G, N).coefficients() == (jf + jg).truncated(N).coefficients(), "sum morphism: " + what);
  Jet2 up_f = leaf_jet(ctx, F, N + 1), up_g = leaf_jet(ctx, G, N + 1);
  rec.check(leaf_jet(ctx, lie_derivative(ctx->v1(), F), N).coefficients() == up_f.derivative(0).coefficients(),
            "chart identity for V1: " + what);
  rec.check(leaf_jet(ctx, lie_derivative(ctx->v2(), F), N).coefficients() == up_f.derivative(1).coefficients(),
            "chart identity for V2: " + what);
  rec.check(leaf_jet(ctx, poisson(*ctx, F, G), N).coefficients() == jacobian(up_f, up_g).truncated(N).coefficients(),
            "bracket compatibility: " + what);
}

using SuiteFn = std::function<void(std::mt19937_64&, SuiteReport&)>;

SuiteFn lookup(const std::string& name) {
  if (name == "radical-lemma") return radical_lemma;
  if (name == "power-lemma") return power_lemma;
  if (name == "lt-facts") return lt_facts;
  if (name == "poisson-lemma") return poisson_lemma;
  if (name == "foliation") return foliation_invariants;
  throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"radical-lemma", "power-lemma", "lt-facts", "poisson-lemma", "foliation"};
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t count) {
  SuiteFn fn = lookup(name);
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  r.name = name;
  std::mt19937_64 rng(seed);
  // Rejected draws do not count; the cap keeps a bad generator from spinning.
  const std::size_t max_draws = 20 * count + 20;
  for (std::size_t draws = 0; r.cases < count && draws < max_draws; ++draws) fn(rng, r);
  if (r.cases < count) {
    ++r.violations;
    r.failures.push_back("generator produced only " + std::to_string(r.cases) + " usable instances");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace leafmult
