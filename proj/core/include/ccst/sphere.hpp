#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "ccst/clifford.hpp"

namespace ccst {

/// Quadrature on S^m ⊂ R^{m+1} for the rotation-invariant measure of unit
/// total mass.
struct QuadratureRule {
  int m = 0;
  std::vector<Vector1> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;

  std::size_t size() const { return nodes.size(); }
  int generators() const { return m + 1; }
};

using RulePtr = std::shared_ptr<QuadratureRule const>;

inline constexpr int kMaxQuadratureDegree = 40;

/// m = 1: uniform angular grid with degree+1 points.
/// m >= 2: product rule, Gauss-Jacobi (α = β = (m-2)/2, Gauss-Legendre at
/// m = 2) in the last coordinate times a rule on S^{m-1} for the rest.
/// Supports 1 <= m <= 4 and 0 <= degree <= kMaxQuadratureDegree.
RulePtr build_quadrature(int m, int degree);

/// Nodes and weights of the n-point Gauss-Jacobi rule for (1-u²)^a on
/// [-1, 1], weights normalized to sum 1.
void gauss_jacobi_symmetric(int n, double a, std::vector<double>& nodes,
                            std::vector<double>& weights);

/// Multivector-valued samples of a function on S^m aligned with a rule.
class SphereFunction {
 public:
  SphereFunction() = default;
  SphereFunction(RulePtr rule, std::vector<Multivector> values);
  /// The zero function.
  explicit SphereFunction(RulePtr rule);

  static SphereFunction sample(RulePtr rule,
                               std::function<Multivector(Vector1 const&)> const& f);

  RulePtr const& rule() const { return rule_; }
  std::vector<Multivector> const& values() const { return values_; }
  std::vector<Multivector>& values() { return values_; }
  Multivector const& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  int generators() const { return rule_->generators(); }

  SphereFunction& operator+=(SphereFunction const& other);
  SphereFunction& operator-=(SphereFunction const& other);
  SphereFunction& operator*=(Complex s);

  /// Largest coefficient over all nodes.
  double max_abs() const;

 private:
  RulePtr rule_;
  std::vector<Multivector> values_;
};

SphereFunction operator+(SphereFunction a, SphereFunction const& b);
SphereFunction operator-(SphereFunction a, SphereFunction const& b);
SphereFunction operator*(Complex s, SphereFunction a);

Multivector integrate(SphereFunction const& f);
/// Σ_i w_i <f(ξ_i), g(ξ_i)> with conjugation on the first slot.
Complex l2_inner(SphereFunction const& f, SphereFunction const& g);
double l2_norm(SphereFunction const& f);

/// CSV rows "x1,...,x_{m+1},weight".
void write_rule_csv(QuadratureRule const& rule, std::ostream& out);

}  // namespace ccst
