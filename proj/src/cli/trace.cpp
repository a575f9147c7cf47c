#include "leafmult/cli/trace.hpp"

#include <algorithm>
#include <sstream>

#include "leafmult/error.hpp"
#include "leafmult/germ/local_basis.hpp"
#include "leafmult/germ/split.hpp"
#include "leafmult/ideal/ideal_ops.hpp"
#include "leafmult/poly/parse.hpp"

namespace leafmult {
namespace {

using nlohmann::json;

json optional_number(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

json step_json(const LedgerStep& s, std::size_t index) {
  json j;
  j["index"] = index;
  j["kind"] = to_string(s.kind);
  j["transfer"] = {{"a", s.transfer.a}, {"b", s.transfer.b}};
  j["sound"] = s.sound;
  j["evidence"] = s.evidence;
  j["global_before"] = s.global_before;
  j["global_after"] = s.global_after;
  j["degree_before"] = s.degree_before;
  j["degree_after"] = s.degree_after;
  j["jet_order"] = s.jet_order;
  j["local_added"] = s.local_added;
  switch (s.kind) {
    case LedgerStep::Kind::kRadical: {
      json e = json::array();
      for (const auto& [g, x] : s.radical_exponents) e.push_back({{"generator", g}, {"exponent", x}});
      j["radical"] = {{"exponents", e}};
      break;
    }
    case LedgerStep::Kind::kPoisson:
      j["poisson"] = {{"f", s.poisson_f}, {"g", s.poisson_g}, {"bracket", s.poisson_bracket}};
      break;
    case LedgerStep::Kind::kJacobian:
      j["jacobian"] = {{"F", s.jacobian_f},
                       {"h", s.jacobian_h},
                       {"h_reduced", s.jacobian_h_reduced},
                       {"k", s.jacobian_k},
                       {"K", s.jacobian_K},
                       {"mu", s.jacobian_mu},
                       {"formula_factor", s.jacobian_formula_factor},
                       {"certified_exponent", s.jacobian_certified_exponent ? json(*s.jacobian_certified_exponent)
                                                                           : json(nullptr)},
                       {"strict_progress", s.strict_progress}};
      break;
  }
  return j;
}

std::vector<std::string> texts(const IdealPresentation& I) {
  std::vector<std::string> out;
  for (const auto& g : I.generators()) out.push_back(to_string(g));
  return out;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::kParse, "trace: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> string_list(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) malformed(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(e.get<std::string>());
  return out;
}

class Checker {
 public:
  explicit Checker(TraceVerification& out) : out_(out) {}
  bool check(const std::string& name, bool ok, const std::string& detail = {}) {
    out_.checks.push_back({name, ok, detail});
    return ok;
  }

 private:
  TraceVerification& out_;
};

struct Replay {
  Problem problem;
  ContextPtr ctx;
  GroebnerOptions groebner;
  int jet_order = 0;

  Polynomial poly(const std::string& text) const { return parse_polynomial(problem.ring, text); }
  IdealPresentation ideal(const std::vector<std::string>& texts) const {
    std::vector<Polynomial> g;
    for (const auto& t : texts) g.push_back(poly(t));
    return IdealPresentation(problem.ring, std::move(g));
  }
  bool member(const Polynomial& f, const IdealPresentation& I) const {
    if (f.is_zero()) return true;
    if (I.is_zero()) return false;
    return is_member(f, leafmult::groebner(I, MonomialOrder::degrevlex(I.ring()->size()), groebner));
  }
  Jet2 jet(const Polynomial& f) const { return leaf_jet(ctx, f, jet_order); }
};

std::string step_name(std::size_t i, const std::string& kind, const std::string& what) {
  return "step " + std::to_string(i) + " (" + kind + "): " + what;
}

// Walks back from a Jacobian step to the radical step that certified the ideal.
std::optional<std::size_t> certifying_radical(const json& steps, std::size_t i) {
  while (i > 0) {
    --i;
    const std::string kind = steps[i].at("kind").get<std::string>();
    if (kind == "radical") return i;
    if (kind == "poisson" && !steps[i].at("poisson").at("bracket").get<std::string>().empty() &&
        steps[i].at("poisson").at("bracket").get<std::string>() != "0")
      return std::nullopt;
    if (kind == "jacobian") return std::nullopt;
  }
  return std::nullopt;
}

void verify_bound(const json& t, Replay& r, Checker& c) {
  const Polynomial F = r.problem.F.value(), G = r.problem.G.value();
  r.jet_order = field(t, "jet_order").get<int>();
  const json& split = field(t, "split");
  const bool isolated = field(split, "isolated").get<bool>();
  Jet2 fL = r.jet(F), gL = r.jet(G);
  GermSplit gs = split_common(fL, gL);
  c.check("split of F, G on the leaf reproduces",
          to_string(gs.f) == field(split, "f").get<std::string>() && to_string(gs.g) == field(split, "g").get<std::string>() &&
              to_string(gs.h_f) == field(split, "h_f").get<std::string>() &&
              to_string(gs.h_g) == field(split, "h_g").get<std::string>() &&
              isolated == (gs.h_f.coeff(0, 0) != 0),
          "f = " + to_string(gs.f) + ", h_f = " + to_string(gs.h_f));
  std::vector<Jet2> local = isolated ? std::vector<Jet2>{fL, gL} : std::vector<Jet2>{gs.f, gs.g};

  const json& steps = field(t, "steps");
  std::vector<std::string> previous{to_string(F), to_string(G)};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> transfers;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const json& s = steps[i];
    const std::string kind = field(s, "kind").get<std::string>();
    const auto before_text = string_list(s, "global_before"), after_text = string_list(s, "global_after");
    const IdealPresentation before = r.ideal(before_text), after = r.ideal(after_text);
    const std::uint64_t a = field(field(s, "transfer"), "a").get<std::uint64_t>();
    const std::uint64_t b = field(field(s, "transfer"), "b").get<std::uint64_t>();
    transfers.emplace_back(a, b);
    c.check(step_name(i, kind, "chained to the previous ideal"), before_text == previous);
    previous = after_text;
    const std::vector<Jet2> local_before = local;
    const int step_order = field(s, "jet_order").get<int>();
    if (kind == "radical") {
      std::uint64_t M = 1;
      bool all = true;
      std::vector<std::string> listed;
      for (const auto& e : field(field(s, "radical"), "exponents")) {
        const Polynomial g = r.poly(e.at("generator").get<std::string>());
        const unsigned x = e.at("exponent").get<unsigned>();
        listed.push_back(to_string(g));
        if (x == 0) {
          all = false;
          continue;
        }
        c.check(step_name(i, kind, "(" + to_string(g) + ")^" + std::to_string(x) + " in I"), r.member(pow(g, x), before));
        if (x >= 2) {
          M += x - 1;
          local.push_back(r.jet(g));
        }
      }
      c.check(step_name(i, kind, "J is generated by the certified elements"), listed == after_text);
      c.check(step_name(i, kind, "I inside J"), contains(after, before, r.groebner));
      c.check(step_name(i, kind, "soundness flag"), field(s, "sound").get<bool>() == all);
      c.check(step_name(i, kind, "transfer m -> M^2 m"), a == M * M && b == 0,
              "M = " + std::to_string(M) + ", recorded a = " + std::to_string(a));
    } else if (kind == "poisson") {
      const json& p = field(s, "poisson");
      const Polynomial f = r.poly(p.at("f").get<std::string>()), g = r.poly(p.at("g").get<std::string>());
      const Polynomial bracket = poisson(*r.ctx, f, g);
      c.check(step_name(i, kind, "F, G in I"), r.member(f, before) && r.member(g, before));
      c.check(step_name(i, kind, "bracket recomputes"), to_string(bracket) == p.at("bracket").get<std::string>());
      std::vector<Polynomial> expect = before.generators();
      if (!bracket.is_zero()) {
        expect.push_back(bracket);
        local.push_back(r.jet(bracket));
      }
      c.check(step_name(i, kind, "J = <I, {F, G}>"), texts(IdealPresentation(r.problem.ring, expect)) == after_text);
      c.check(step_name(i, kind, "transfer m -> m + 1"), a == 1 && b == 1);
    } else if (kind == "jacobian") {
      const json& jj = field(s, "jacobian");
      const Polynomial Fj = r.poly(jj.at("F").get<std::string>());
      c.check(step_name(i, kind, "F in I"), r.member(Fj, before));
      auto rad = certifying_radical(steps, i);
      bool exact = false;
      if (rad) {
        RadicalResult rr = attempt_radical(r.ideal(string_list(steps[*rad], "global_before")));
        std::vector<std::string> gens;
        for (const auto& g : rr.radical.generators()) gens.push_back(to_string(g));
        exact = rr.status == RadicalResult::Status::kExact && gens == string_list(steps[*rad], "global_after");
      }
      c.check(step_name(i, kind, "I is a certified radical"), exact);
      std::vector<Jet2> locus;
      for (const auto& g : before.generators()) locus.push_back(leaf_jet(r.ctx, g, step_order));
      LocusSplit ls = split_on_locus(leaf_jet(r.ctx, Fj, step_order), locus);
      FactorMultiplicities fm = factor_multiplicities(ls.h);
      c.check(step_name(i, kind, "h, h', k, K recompute"),
              to_string(ls.h) == jj.at("h").get<std::string>() &&
                  to_string(fm.reduced) == jj.at("h_reduced").get<std::string>() && fm.k == jj.at("k").get<int>() &&
                  fm.K == jj.at("K").get<int>(),
              "h = " + to_string(ls.h) + ", k = " + std::to_string(fm.k) + ", K = " + std::to_string(fm.K));
      c.check(step_name(i, kind, "f in the local ideal"), local_membership(ls.f, local_before));
      std::vector<Polynomial> expect = before.generators();
      for (int x = fm.k; x >= 0; --x) expect.push_back(r.ctx->iterated_derivative(Fj, x, fm.k - x));
      c.check(step_name(i, kind, "J = <I, derivatives of order k of F>"),
              texts(IdealPresentation(r.problem.ring, expect)) == after_text);
      const std::uint64_t formula = static_cast<std::uint64_t>(fm.K) << fm.K;
      c.check(step_name(i, kind, "formula factor K 2^K"), jj.at("formula_factor").get<std::uint64_t>() == formula);
      if (jj.at("certified_exponent").is_null()) {
        c.check(step_name(i, kind, "transfer uses the formula factor"), a == formula && b == 0);
      } else {
        const unsigned n = jj.at("certified_exponent").get<unsigned>();
        Jet2 power = fm.reduced;
        for (unsigned e = 1; e < n; ++e) power = power * fm.reduced;
        c.check(step_name(i, kind, "(h')^" + std::to_string(n) + " in the local ideal"),
                n <= formula && local_membership(power, local_before));
        c.check(step_name(i, kind, "transfer m -> n m"), a == n && b == 0);
      }
      local.push_back(fm.reduced);
    } else {
      malformed("unknown step kind '" + kind + "'");
    }
  }

  const std::string status = field(t, "status").get<std::string>();
  const json& bound = field(t, "bound");
  if (status == "point-excluded") {
    const IdealPresentation last = r.ideal(previous);
    bool excluded = false;
    for (const auto& g : last.generators()) excluded = excluded || evaluate(g, r.ctx->point()) != 0;
    c.check("final ideal excludes the point", excluded);
    // Pair property at the end of the chain.
    bool pair_ok = true;
    try {
      make_pair(last, local, r.ctx, r.jet_order);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kHypothesis) throw;
      pair_ok = false;
    }
    c.check("final pair has leaf_jet(I) inside the local ideal", pair_ok);
    std::uint64_t v = 0;
    for (auto it = transfers.rbegin(); it != transfers.rend(); ++it) v = it->first * v + it->second;
    c.check("bound is the composed ledger at 0", !bound.is_null() && bound.get<std::uint64_t>() == v,
            "composed " + std::to_string(v));
    const json& direct = field(t, "direct_value");
    if (!direct.is_null() && !bound.is_null())
      c.check("direct value at most the bound", direct.get<std::uint64_t>() <= bound.get<std::uint64_t>());
  } else {
    c.check("no bound reported without point exclusion", bound.is_null());
  }
}

void verify_appendix(const json& t, Replay& r, Checker& c) {
  const json& w = field(t, "witness");
  AppendixOptions options;
  options.groebner = r.groebner;
  options.jet_order = field(t, "jet_order").get<int>();
  ExtensionWitness again = construct_H(r.problem.F.value(), IdealPresentation(r.problem.ring, r.problem.ideal), r.ctx, options);
  c.check("h and H recompute", to_string(again.h) == field(w, "h").get<std::string>() &&
                                   to_string(again.H) == field(w, "H").get<std::string>());
  const int mu = field(w, "mu").get<int>();
  const int count = field(w, "factor_count").get<int>();
  c.check("mu is the order of h", again.h.valuation() == mu);
  c.check("factor count at most 2^mu", count <= (1 << mu) && count == static_cast<int>(field(w, "subsets").size()));
  c.check("divisibility certificate", again.divides && again.divisibility_order >= 0);
  c.check("vanishing certificate", again.vanishes);
  if (again.H.is_exact() && again.h.is_exact()) {
    // Global division in Q[t1, t2] implies division of germs.
    IdealPresentation principal(leaf_ring(), {again.H.to_polynomial(leaf_ring())});
    const bool divides = is_member(pow(again.h.to_polynomial(leaf_ring()), 1u << mu),
                                   groebner(principal, MonomialOrder::degrevlex(2), r.groebner));
    c.check("H divides h^(2^mu) as polynomials", divides);
  }
}

}  // namespace

json bound_trace(const ProblemManifest& m, const BoundReport& report) {
  json t;
  t["trace_version"] = kTraceVersion;
  t["kind"] = "bound";
  t["manifest"] = to_json(m);
  t["jet_order"] = report.jet_order;
  t["split"] = {{"f", report.f_local}, {"g", report.g_local}, {"h_f", report.h_f}, {"h_g", report.h_g},
                {"isolated", report.isolated}};
  t["direct_value"] = optional_number(report.direct_value);
  json steps = json::array();
  for (std::size_t i = 0; i < report.ledger.steps.size(); ++i) steps.push_back(step_json(report.ledger.steps[i], i));
  t["steps"] = steps;
  t["status"] = to_string(report.ledger.status);
  t["detail"] = report.ledger.detail;
  t["bound"] = optional_number(report.bound);
  t["timings"] = {{"seconds", report.seconds}};
  return t;
}

json appendix_trace(const ProblemManifest& m, const ExtensionWitness& w, double seconds) {
  json t;
  t["trace_version"] = kTraceVersion;
  t["kind"] = "appendix";
  t["manifest"] = to_json(m);
  t["jet_order"] = m.options.jet_order;
  json subsets = json::array();
  for (std::size_t i = 0; i < w.subsets.size(); ++i)
    subsets.push_back({{"multiplicity", w.subsets[i].multiplicity},
                       {"description", w.subsets[i].describe(w.branches)},
                       {"divides_h", static_cast<bool>(w.fs_divides_h[i])}});
  json branches = json::array();
  for (const auto& cyc : w.branches.cycles) branches.push_back(cyc.describe());
  t["witness"] = {{"h", to_string(w.h)},
                  {"H", to_string(w.H)},
                  {"mu", w.mu},
                  {"branches", branches},
                  {"subsets", subsets},
                  {"factor_count", w.factor_count},
                  {"divides", w.divides},
                  {"divisibility_order", w.divisibility_order},
                  {"vanishes", w.vanishes},
                  {"vanishing_order", w.vanishing_order},
                  {"trace_branches", w.trace_branches},
                  {"holds", w.holds()}};
  t["timings"] = {{"seconds", seconds}};
  return t;
}

TraceVerification verify_trace(const json& trace) {
  if (!trace.is_object()) malformed("top level must be an object");
  if (!trace.contains("trace_version") || trace.at("trace_version") != kTraceVersion)
    malformed("unsupported trace_version (expected " + std::to_string(kTraceVersion) + ")");
  TraceVerification out;
  Checker c(out);
  Replay r;
  ProblemManifest m = parse_manifest(field(trace, "manifest"));
  r.problem = build_problem(m);
  r.ctx = build_context(r.problem);
  r.groebner.max_steps = m.options.budget;
  const std::string kind = field(trace, "kind").get<std::string>();
  try {
    if (kind == "bound") {
      if (!r.problem.F || !r.problem.G) malformed("bound trace without F and G");
      verify_bound(trace, r, c);
    } else if (kind == "appendix") {
      if (!r.problem.F || r.problem.ideal.empty()) malformed("appendix trace without F and ideal");
      verify_appendix(trace, r, c);
    } else {
      malformed("unknown kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  return out;
}

}  // namespace leafmult
