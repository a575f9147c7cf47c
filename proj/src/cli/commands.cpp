#include "leafmult/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include "leafmult/cli/suites.hpp"
#include "leafmult/cli/trace.hpp"

namespace leafmult {
namespace {

using nlohmann::json;

void write_trace(const json& trace, const std::string& path, std::ostream& out) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kParse, "cannot write trace '" + path + "'");
  f << trace.dump(2) << "\n";
  out << "trace written to " << path << "\n";
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

std::string point_text(const std::vector<Rational>& p) {
  std::vector<std::string> parts;
  for (const auto& c : p) parts.push_back(to_string(c));
  return "(" + join(parts) + ")";
}

std::string order_text(int order) { return order >= kExactPrecision ? "exact" : std::to_string(order); }

GroebnerOptions budget_of(const ManifestOptions& o) {
  GroebnerOptions g;
  g.max_steps = o.budget;
  return g;
}

template <class Fn>
int guarded(std::ostream& out, Fn fn) {
  try {
    return fn();
  } catch (const Error& e) {
    out << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kRingMismatch:
    case ErrorCode::kInvalidArgument: return kExitParse;
    case ErrorCode::kHypothesis:
    case ErrorCode::kDegenerate: return kExitHypothesis;
    case ErrorCode::kBudget:
    case ErrorCode::kInconclusive:
    case ErrorCode::kNeedsRegeneration:
    case ErrorCode::kUnsupported: return kExitPartial;
    case ErrorCode::kCertificate: return kExitCertificate;
  }
  return kExitCertificate;
}

void OptionOverrides::apply(ManifestOptions& o) const {
  if (seed) o.seed = *seed;
  if (jet_order) o.jet_order = *jet_order;
  if (budget) o.budget = *budget;
  if (trace) o.trace = *trace;
}

int cmd_check(const ProblemManifest& m, std::ostream& out) {
  return guarded(out, [&] {
    Problem p = build_problem(m);
    out << "ring: " << join(m.variables) << "\n";
    CommuteCheck cc = check_commute(p.v1, p.v2);
    if (!cc.commute) {
      out << "commutation: FAIL, [V1, V2]_" << m.variables[*cc.witness_index] << " = " << to_string(cc.witness) << "\n";
      return static_cast<int>(kExitHypothesis);
    }
    out << "commutation: ok\n";
    const auto a = p.v1.at(p.point), b = p.v2.at(p.point);
    std::vector<std::string> sa, sb;
    for (const auto& c : a) sa.push_back(to_string(c));
    for (const auto& c : b) sb.push_back(to_string(c));
    try {
      build_context(p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerate) throw;
      out << "nonsingularity: FAIL, V1(p) = (" << join(sa) << "), V2(p) = (" << join(sb) << ") are dependent\n";
      return static_cast<int>(kExitHypothesis);
    }
    out << "nonsingularity: ok at p = " << point_text(p.point) << ", V1(p) = (" << join(sa) << "), V2(p) = ("
        << join(sb) << ")\n";
    if (p.F) out << "F = " << to_string(*p.F) << "\n";
    if (p.G) out << "G = " << to_string(*p.G) << "\n";
    if (!p.ideal.empty()) {
      std::vector<std::string> g;
      for (const auto& x : p.ideal) g.push_back(to_string(x));
      out << "I = <" << join(g) << ">\n";
    }
    out << "OK\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_bound(const ProblemManifest& m, std::ostream& out) {
  return guarded(out, [&] {
    Problem p = build_problem(m);
    if (!p.F || !p.G) throw Error(ErrorCode::kParse, "manifest: bound needs F and G");
    ContextPtr ctx = build_context(p);
    PairOptions po;
    po.jet_order = m.options.jet_order;
    po.seed = m.options.seed;
    po.groebner = budget_of(m.options);
    BoundReport rep = nonisolated_bound(*p.F, *p.G, ctx, po);
    out << "F = " << to_string(*p.F) << ", G = " << to_string(*p.G) << " at p = " << point_text(p.point) << "\n";
    out << "leaf split: f = " << rep.f_local << ", g = " << rep.g_local << ", h_f = " << rep.h_f << ", h_g = " << rep.h_g
        << (rep.isolated ? " (isolated)" : "") << "\n";
    for (std::size_t i = 0; i < rep.ledger.steps.size(); ++i) {
      const auto& s = rep.ledger.steps[i];
      out << "  [" << i << "] " << to_string(s.kind) << ": m -> " << s.transfer.a << " m + " << s.transfer.b
          << "; deg " << s.degree_before << " -> " << s.degree_after << "; I = <" << join(s.global_after) << ">\n"
          << "      " << s.evidence << "\n";
    }
    out << "status: " << to_string(rep.ledger.status);
    if (!rep.ledger.detail.empty()) out << " (" << rep.ledger.detail << ")";
    out << "\n";
    if (rep.bound) out << "bound: " << *rep.bound << "\n";
    if (rep.direct_value) out << "direct value: " << *rep.direct_value << "\n";
    out << "time: " << rep.seconds << " s\n";
    write_trace(bound_trace(m, rep), m.options.trace, out);
    return static_cast<int>(rep.ledger.status == BoundLedger::Status::kPointExcluded ? kExitOk : kExitPartial);
  });
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t count, std::ostream& out) {
  return guarded(out, [&] {
    std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    bool ok = true;
    for (const auto& name : names) {
      SuiteReport r = run_suite(name, seed, count);
      out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.violations
          << " violations, " << r.skipped << " rejected draws, " << r.seconds << " s\n";
      for (const auto& f : r.failures) out << "  " << f << "\n";
      ok = ok && r.passed();
    }
    return static_cast<int>(ok ? kExitOk : kExitCertificate);
  });
}

int cmd_verify_trace(const std::string& path, std::ostream& out) {
  return guarded(out, [&] {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kParse, "cannot open trace '" + path + "'");
    json t;
    try {
      t = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kParse, "trace '" + path + "': " + e.what());
    }
    TraceVerification v = verify_trace(t);
    for (const auto& c : v.checks)
      out << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() || c.ok ? "" : " [" + c.detail + "]") << "\n";
    out << (v.ok() ? "trace verified" : "trace verification FAILED") << " (" << v.checks.size() << " checks)\n";
    return static_cast<int>(v.ok() ? kExitOk : kExitCertificate);
  });
}

int cmd_appendix(const ProblemManifest& m, std::ostream& out) {
  return guarded(out, [&] {
    Problem p = build_problem(m);
    if (!p.F || p.ideal.empty()) throw Error(ErrorCode::kParse, "manifest: appendix needs F and ideal");
    ContextPtr ctx = build_context(p);
    AppendixOptions ao;
    ao.jet_order = m.options.jet_order;
    ao.groebner = budget_of(m.options);
    const auto start = std::chrono::steady_clock::now();
    ExtensionWitness w = construct_H(*p.F, IdealPresentation(p.ring, p.ideal), ctx, ao);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << "h = " << to_string(w.h) << ", mu = " << w.mu << "\n";
    for (std::size_t i = 0; i < w.subsets.size(); ++i)
      out << "  S" << i << ": " << w.subsets[i].describe(w.branches) << (w.fs_divides_h[i] ? "" : " (F_S does not divide h)")
          << "\n";
    out << "H = " << to_string(w.H) << " (" << w.factor_count << " factors, 2^mu = " << (1 << w.mu) << ")\n";
    out << "divisibility H | h^(2^mu): " << (w.divides ? "ok" : "FAIL") << " to order " << order_text(w.divisibility_order) << "\n";
    out << "vanishing on V(I) on the leaf: " << (w.vanishes ? "ok" : "FAIL") << " to order " << order_text(w.vanishing_order) << "\n";
    out << "time: " << seconds << " s\n";
    write_trace(appendix_trace(m, w, seconds), m.options.trace, out);
    return static_cast<int>(w.holds() ? kExitOk : kExitCertificate);
  });
}

}  // namespace leafmult
