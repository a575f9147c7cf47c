#include "leafmult/foliation/foliation.hpp"

#include <mutex>

#include "leafmult/error.hpp"

namespace leafmult {

VectorField::VectorField(RingPtr ring, std::vector<Polynomial> components)
    : ring_(std::move(ring)), comps_(std::move(components)) {
  if (comps_.size() != ring_->size())
    throw Error(ErrorCode::kInvalidArgument, "vector field needs one component per variable");
  for (auto& c : comps_) {
    if (!c.ring()) c = Polynomial(ring_);
    require_same_ring(c, Polynomial(ring_));
  }
}

std::vector<Rational> VectorField::at(std::span<const Rational> point) const {
  std::vector<Rational> out;
  for (const auto& c : comps_) out.push_back(evaluate(c, point));
  return out;
}

Polynomial lie_derivative(const VectorField& v, const Polynomial& f) {
  require_same_ring(f, Polynomial(v.ring()));
  Polynomial out(v.ring());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero() || !f.uses_variable(i)) continue;
    out += v[i] * derive(f, i);
  }
  return out;
}

VectorField lie_bracket(const VectorField& v1, const VectorField& v2) {
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < v1.size(); ++i) comps.push_back(lie_derivative(v1, v2[i]) - lie_derivative(v2, v1[i]));
  return VectorField(v1.ring(), std::move(comps));
}

CommuteCheck check_commute(const VectorField& v1, const VectorField& v2) {
  VectorField b = lie_bracket(v1, v2);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) return {false, i, b[i]};
  return {true, std::nullopt, Polynomial(v1.ring())};
}

std::shared_ptr<const FoliationContext> FoliationContext::create(VectorField v1, VectorField v2,
                                                                 std::vector<Rational> p) {
  if (!(*v1.ring() == *v2.ring())) throw Error(ErrorCode::kRingMismatch, "vector fields live in different rings");
  if (p.size() != v1.ring()->size()) throw Error(ErrorCode::kInvalidArgument, "base point has the wrong arity");
  CommuteCheck c = check_commute(v1, v2);
  if (!c.commute)
    throw Error(ErrorCode::kHypothesis, "vector fields do not commute: bracket component " +
                                            v1.ring()->name(*c.witness_index) + " = " + to_string(c.witness));
  auto a = v1.at(p), b = v2.at(p);
  bool independent = false;
  for (std::size_t i = 0; i < a.size() && !independent; ++i)
    for (std::size_t j = i + 1; j < a.size() && !independent; ++j)
      if (a[i] * b[j] - a[j] * b[i] != 0) independent = true;
  if (!independent) throw Error(ErrorCode::kDegenerate, "V1(p) and V2(p) are linearly dependent");
  return std::shared_ptr<const FoliationContext>(new FoliationContext(std::move(v1), std::move(v2), std::move(p)));
}

Polynomial FoliationContext::iterated_derivative(const Polynomial& f, int a, int b) const {
  if (a < 0 || b < 0) throw Error(ErrorCode::kInvalidArgument, "negative derivative order");
  require_same_ring(f, Polynomial(ring()));
  if (a == 0 && b == 0) return f;
  return derivative_keyed(to_string(f), f, a, b);
}

Polynomial FoliationContext::derivative_keyed(const std::string& key, const Polynomial& f, int a, int b) const {
  if (a == 0 && b == 0) return f;
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      auto jt = it->second.find({a, b});
      if (jt != it->second.end()) return jt->second;
    }
  }
  Polynomial result = a > 0 ? lie_derivative(v1_, derivative_keyed(key, f, a - 1, b))
                            : lie_derivative(v2_, derivative_keyed(key, f, 0, b - 1));
  std::unique_lock lock(mutex_);
  memo_[key].emplace(std::pair{a, b}, result);
  return result;
}

std::size_t FoliationContext::cache_size() const {
  std::shared_lock lock(mutex_);
  std::size_t n = 0;
  for (const auto& [k, m] : memo_) n += m.size();
  return n;
}

Polynomial poisson(const FoliationContext& ctx, const Polynomial& f, const Polynomial& g) {
  return lie_derivative(ctx.v1(), f) * lie_derivative(ctx.v2(), g) -
         lie_derivative(ctx.v2(), f) * lie_derivative(ctx.v1(), g);
}

Jet2 leaf_jet(const ContextPtr& ctx, const Polynomial& f, int order) {
  if (order < 0) throw Error(ErrorCode::kInvalidArgument, "negative jet order");
  Jet2 jet(order);
  Jet2::CoeffMap terms;
  // One level past the order decides whether the germ is a polynomial.
  for (int d = 0; d <= order + 1; ++d) {
    bool level_zero = true;
    for (int a = d; a >= 0; --a) {
      int b = d - a;
      Polynomial der = ctx->iterated_derivative(f, a, b);
      if (der.is_zero()) continue;
      level_zero = false;
      Rational c = evaluate(der, ctx->point()) / (factorial(a) * factorial(b));
      if (c == 0) continue;
      if (d <= order) jet.set(a, b, c);
      terms.emplace(Jet2::Key{a, b}, c);
    }
    if (level_zero) {
      jet.set_exact_terms(std::move(terms));
      return jet;
    }
  }
  jet.set_producer([ctx, f](int n) { return leaf_jet(ctx, f, n); });
  return jet;
}

int default_jet_order(const Polynomial& f, const Polynomial& g) {
  return 2 * (std::max(f.total_degree(), 0) + std::max(g.total_degree(), 0)) + 4;
}

}  // namespace leafmult
