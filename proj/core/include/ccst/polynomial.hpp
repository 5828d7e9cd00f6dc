#pragma once

#include <functional>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccst/clifford.hpp"

namespace ccst {

using Exponents = std::vector<int>;

/// Polynomial in x_1..x_{m+1} with Clifford coefficients, stored as
/// Σ_α x^α c_α (coefficient on the right). Operators such as dirac act by
/// left multiplication, so the kernel of dirac is the space of left
/// monogenic polynomials and is closed under right multiplication.
class MvPolynomial {
 public:
  using Terms = std::map<Exponents, Multivector>;

  MvPolynomial() = default;
  explicit MvPolynomial(int generators);

  static MvPolynomial constant(Multivector const& c);
  /// x_j · c (j is 1-based).
  static MvPolynomial coordinate(int generators, int j, Multivector const& c);
  static MvPolynomial monomial(Exponents exponents, Multivector const& c);
  /// |x|² as a scalar polynomial.
  static MvPolynomial norm_squared(int generators);

  int generators() const { return generators_; }
  Terms const& terms() const { return terms_; }

  /// Adds c to the coefficient of x^α.
  void add_term(Exponents const& exponents, Multivector const& c);

  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous(int degree) const;
  MvPolynomial homogeneous_part(int degree) const;
  double max_abs_coefficient() const;
  /// Drops terms whose coefficients all vanish.
  MvPolynomial pruned(double tol = 0.0) const;

  MvPolynomial& operator+=(MvPolynomial const& other);
  MvPolynomial& operator-=(MvPolynomial const& other);
  MvPolynomial& operator*=(Complex s);

  /// Right multiplication of every coefficient: p · c.
  MvPolynomial times_right(Multivector const& c) const;
  /// Left multiplication of every coefficient: c · p.
  MvPolynomial times_left(Multivector const& c) const;
  /// x̲ · p, the pointwise product with the 1-vector variable on the left.
  MvPolynomial vector_variable_times() const;
  /// Product with a scalar polynomial (coefficients of s taken as scalars).
  MvPolynomial times_scalar_polynomial(MvPolynomial const& s) const;

  /// ∂/∂x_j (j is 1-based).
  MvPolynomial partial(int j) const;
  /// x_i ∂_j - x_j ∂_i.
  MvPolynomial angular(int i, int j) const;

  Multivector evaluate(Vector1 const& x) const;

 private:
  int generators_ = 0;
  Terms terms_;
};

MvPolynomial operator+(MvPolynomial a, MvPolynomial const& b);
MvPolynomial operator-(MvPolynomial a, MvPolynomial const& b);
MvPolynomial operator*(Complex s, MvPolynomial a);

/// Σ_j e_j ∂_{x_j} p.
MvPolynomial dirac(MvPolynomial const& p);
/// Spherical Dirac operator -Σ_{i<j} e_ij (x_i ∂_j - x_j ∂_i).
MvPolynomial gamma(MvPolynomial const& p);
MvPolynomial laplacian(MvPolynomial const& p);
/// Σ_j x_j ∂_j.
MvPolynomial euler(MvPolynomial const& p);
/// Laplace-Beltrami operator of S^m applied to a homogeneous polynomial of
/// degree d, returned as the degree-d polynomial |x|²Δp - d(d+m-1)p whose
/// restriction to the sphere is Δ_ξ(p|_S).
MvPolynomial spherical_laplacian(MvPolynomial const& p);

/// Largest coefficient of the difference.
double distance(MvPolynomial const& a, MvPolynomial const& b);

/// Basis of the homogeneous degree-k left monogenic polynomials in m+1
/// variables, as a real vector space (right-Clifford-linear combinations of
/// the result span the same space). Computed as the null space of the dense
/// dirac matrix via SVD with relative threshold 1e-10.
std::vector<MvPolynomial> monogenic_basis(int m, int k);

/// Cached variant; thread safe.
std::vector<MvPolynomial> const& monogenic_basis_cached(int m, int k);

/// Dimension of ℳ⁺(m+1, k) over the reals, from the null-space rank.
std::size_t monogenic_dimension(int m, int k);

using PointEvaluator = std::function<Multivector(Vector1 const&)>;

/// If(x) = (x̲ / |x|^{m+1}) f(x̲ / |x|²). The returned evaluator throws at 0.
PointEvaluator inversion(PointEvaluator f);

/// E(x) = conj(x̲) / |x|^{m+1}.
Multivector cauchy_kernel(Vector1 const& x);

/// Central-difference Dirac residual Σ_j e_j ∂_j f(x). Order 2 uses
/// (f(x+h) - f(x-h)) / 2h; order 4 uses the five-point stencil
/// (-f(x+2h) + 8f(x+h) - 8f(x-h) + f(x-2h)) / 12h.
Multivector dirac_residual_fd(PointEvaluator const& f, Vector1 const& x,
                              double step = 1e-4, int order = 2);

nlohmann::json to_json(MvPolynomial const& p);
MvPolynomial polynomial_from_json(nlohmann::json const& j, int generators);

}  // namespace ccst
