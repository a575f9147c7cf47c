#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "leafmult/germ/jet2.hpp"
#include "leafmult/poly/polynomial.hpp"

namespace leafmult {

/// Polynomial vector field: one component per ring variable.
class VectorField {
 public:
  VectorField() = default;
  VectorField(RingPtr ring, std::vector<Polynomial> components);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& components() const { return comps_; }
  const Polynomial& operator[](std::size_t i) const { return comps_[i]; }
  std::size_t size() const { return comps_.size(); }

  /// Value at a point.
  std::vector<Rational> at(std::span<const Rational> point) const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> comps_;
};

/// Sum_i V_i * dF/dx_i.
Polynomial lie_derivative(const VectorField& v, const Polynomial& f);

/// Componentwise [V1, V2]_i = V1(V2_i) - V2(V1_i).
VectorField lie_bracket(const VectorField& v1, const VectorField& v2);

struct CommuteCheck {
  bool commute = false;
  std::optional<std::size_t> witness_index;  // first nonzero bracket component
  Polynomial witness;
};

CommuteCheck check_commute(const VectorField& v1, const VectorField& v2);

/// Two commuting fields and a base point at which they are independent.
/// Iterated derivatives V1^a V2^b F are cached per context.
class FoliationContext {
 public:
  /// Throws kHypothesis when the fields do not commute and kDegenerate when
  /// V1(p), V2(p) are dependent.
  static std::shared_ptr<const FoliationContext> create(VectorField v1, VectorField v2, std::vector<Rational> p);

  const VectorField& v1() const { return v1_; }
  const VectorField& v2() const { return v2_; }
  const std::vector<Rational>& point() const { return p_; }
  const RingPtr& ring() const { return v1_.ring(); }

  /// V1^a V2^b F (the fields commute, so the order of application is free).
  Polynomial iterated_derivative(const Polynomial& f, int a, int b) const;

  std::size_t cache_size() const;

 private:
  Polynomial derivative_keyed(const std::string& key, const Polynomial& f, int a, int b) const;

  FoliationContext(VectorField v1, VectorField v2, std::vector<Rational> p)
      : v1_(std::move(v1)), v2_(std::move(v2)), p_(std::move(p)) {}

  VectorField v1_, v2_;
  std::vector<Rational> p_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::string, std::map<std::pair<int, int>, Polynomial>> memo_;
};

using ContextPtr = std::shared_ptr<const FoliationContext>;

/// {F, G} = V1(F) V2(G) - V2(F) V1(G).
Polynomial poisson(const FoliationContext& ctx, const Polynomial& f, const Polynomial& g);

/// Lie-series jet of F restricted to the leaf through p: the coefficient of
/// t1^a t2^b is (V1^a V2^b F)(p) / (a! b!). The jet regenerates at any order
/// and is marked exact once a whole level of iterated derivatives vanishes.
Jet2 leaf_jet(const ContextPtr& ctx, const Polynomial& f, int order);

/// Starting jet order 2 (deg F + deg G) + 4.
int default_jet_order(const Polynomial& f, const Polynomial& g);

}  // namespace leafmult
