#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ccst {

using Complex = std::complex<double>;

/// Largest supported generator count (m + 1 <= 7, 128 blades).
inline constexpr int kMaxGenerators = 7;

/// A basis blade e_A encoded as a bitmask: bit (i - 1) set iff i ∈ A.
using Blade = std::uint32_t;

int blade_grade(Blade blade);

/// Sign of e_A e_B = sign · e_{A xor B} under e_i e_i = -1.
int blade_product_sign(Blade a, Blade b);

/// "" for the scalar, "12" for e12, "135" for e135.
std::string blade_to_string(Blade blade);
Blade blade_from_string(std::string const& text, int generators);

/// Point or direction of R^{m+1}, identified with the 1-vector Σ x_j e_j.
class Vector1 {
 public:
  Vector1() = default;
  explicit Vector1(std::vector<double> components);
  Vector1(std::initializer_list<double> components);
  static Vector1 zero(int generators);
  static Vector1 basis(int generators, int index);  // index is 1-based

  int dimension() const { return static_cast<int>(x_.size()); }
  double operator[](int i) const { return x_[i]; }
  double& operator[](int i) { return x_[i]; }
  std::span<double const> components() const { return x_; }

  double norm() const;
  double dot(Vector1 const& other) const;
  Vector1 normalized() const;

  Vector1& operator+=(Vector1 const& other);
  Vector1& operator-=(Vector1 const& other);
  Vector1& operator*=(double s);

 private:
  std::vector<double> x_;
};

Vector1 operator+(Vector1 a, Vector1 const& b);
Vector1 operator-(Vector1 a, Vector1 const& b);
Vector1 operator*(double s, Vector1 v);
Vector1 operator*(Vector1 v, double s);

/// Element of the complex Clifford algebra C_{m+1} with e_i e_j + e_j e_i =
/// -2 δ_ij, stored densely over all 2^{m+1} blades (index = blade bitmask).
class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(int generators);

  static Multivector scalar(int generators, Complex value);
  static Multivector blade(int generators, Blade blade, Complex value = 1.0);
  static Multivector from_vector(Vector1 const& v);

  int generators() const { return generators_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex operator[](Blade blade) const { return coeffs_[blade]; }
  Complex& operator[](Blade blade) { return coeffs_[blade]; }
  std::span<Complex const> coefficients() const { return coeffs_; }
  std::span<Complex> coefficients() { return coeffs_; }

  /// Coefficient 2-norm (sqrt Σ |u_A|²).
  double norm() const;
  /// Largest |u_A|.
  double max_abs() const;
  /// Part of grade g.
  Multivector grade(int g) const;

  Multivector& operator+=(Multivector const& other);
  Multivector& operator-=(Multivector const& other);
  Multivector& operator*=(Complex s);
  Multivector operator-() const;

  /// this += s · other, without temporaries.
  void add_scaled(Multivector const& other, Complex s);
  void add_scaled(Multivector const& other, double s);

 private:
  int generators_ = 0;
  std::vector<Complex> coeffs_;
};

Multivector operator+(Multivector a, Multivector const& b);
Multivector operator-(Multivector a, Multivector const& b);
Multivector operator*(Complex s, Multivector a);
Multivector operator*(Multivector a, Complex s);

Multivector geometric_product(Multivector const& a, Multivector const& b);
Multivector operator*(Multivector const& a, Multivector const& b);

/// Left product v̲ ⊗ a for a 1-vector v, cheaper than the dense product.
Multivector vector_times(Vector1 const& v, Multivector const& a);

/// Clifford conjugation: linear, grade g scaled by (-1)^{g(g+1)/2}.
Multivector clifford_conjugate(Multivector const& a);

/// Σ_A u_A v_A; bilinear (no complex conjugation).
Complex coeff_inner(Multivector const& u, Multivector const& v);
/// Σ_A conj(u_A) v_A; the Hermitian pairing used for L² norms.
Complex coeff_inner_hermitian(Multivector const& u, Multivector const& v);

/// η̲ ∧ ξ̲ = Σ_{i<j} (η_i ξ_j - η_j ξ_i) e_ij.
Multivector wedge_vectors(Vector1 const& eta, Vector1 const& xi);

/// Max-abs coefficient distance.
double distance(Multivector const& a, Multivector const& b);

nlohmann::json to_json(Multivector const& a);
Multivector multivector_from_json(nlohmann::json const& j, int generators);

}  // namespace ccst
