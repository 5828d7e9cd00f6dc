#include "ccst/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ccst {

namespace {

void require_same(int a, int b, char const* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
  }
}

void check_generators(int generators) {
  if (generators < 1 || generators > kMaxGenerators) {
    throw std::invalid_argument("unsupported generator count " +
                                std::to_string(generators));
  }
}

}  // namespace

int blade_grade(Blade blade) { return std::popcount(blade); }

int blade_product_sign(Blade a, Blade b) {
  // Pairs (i ∈ A, j ∈ B) with i > j each cost one transposition.
  int swaps = 0;
  for (Blade shifted = a >> 1; shifted != 0; shifted >>= 1) {
    swaps += std::popcount(shifted & b);
  }
  swaps += std::popcount(a & b);  // e_i e_i = -1
  return (swaps & 1) ? -1 : 1;
}

std::string blade_to_string(Blade blade) {
  std::string out;
  for (int i = 0; blade != 0; ++i, blade >>= 1) {
    if (blade & 1u) out += std::to_string(i + 1);
  }
  return out;
}

Blade blade_from_string(std::string const& text, int generators) {
  Blade blade = 0;
  int previous = 0;
  for (char c : text) {
    int const index = c - '0';
    if (index < 1 || index > generators || index <= previous) {
      throw std::invalid_argument("malformed blade index string '" + text +
                                  "'");
    }
    blade |= Blade{1} << (index - 1);
    previous = index;
  }
  return blade;
}

// ---------------------------------------------------------------- Vector1

Vector1::Vector1(std::vector<double> components) : x_(std::move(components)) {}

Vector1::Vector1(std::initializer_list<double> components) : x_(components) {}

Vector1 Vector1::zero(int generators) {
  return Vector1(std::vector<double>(generators, 0.0));
}

Vector1 Vector1::basis(int generators, int index) {
  Vector1 v = zero(generators);
  v.x_.at(index - 1) = 1.0;
  return v;
}

double Vector1::norm() const { return std::sqrt(dot(*this)); }

double Vector1::dot(Vector1 const& other) const {
  require_same(dimension(), other.dimension(), "Vector1::dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) s += x_[i] * other.x_[i];
  return s;
}

Vector1 Vector1::normalized() const {
  double const n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  return (1.0 / n) * *this;
}

Vector1& Vector1::operator+=(Vector1 const& other) {
  require_same(dimension(), other.dimension(), "Vector1::operator+=");
  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] += other.x_[i];
  return *this;
}

Vector1& Vector1::operator-=(Vector1 const& other) {
  require_same(dimension(), other.dimension(), "Vector1::operator-=");
  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] -= other.x_[i];
  return *this;
}

Vector1& Vector1::operator*=(double s) {
  for (double& v : x_) v *= s;
  return *this;
}

Vector1 operator+(Vector1 a, Vector1 const& b) { return a += b; }
Vector1 operator-(Vector1 a, Vector1 const& b) { return a -= b; }
Vector1 operator*(double s, Vector1 v) { return v *= s; }
Vector1 operator*(Vector1 v, double s) { return v *= s; }

// ------------------------------------------------------------ Multivector

Multivector::Multivector(int generators)
    : generators_(generators),
      coeffs_((check_generators(generators), std::size_t{1} << generators)) {}

Multivector Multivector::scalar(int generators, Complex value) {
  Multivector a(generators);
  a.coeffs_[0] = value;
  return a;
}

Multivector Multivector::blade(int generators, Blade blade, Complex value) {
  Multivector a(generators);
  a.coeffs_.at(blade) = value;
  return a;
}

Multivector Multivector::from_vector(Vector1 const& v) {
  Multivector a(v.dimension());
  for (int j = 0; j < v.dimension(); ++j) a.coeffs_[Blade{1} << j] = v[j];
  return a;
}

double Multivector::norm() const {
  double s = 0.0;
  for (Complex const& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (Complex const& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Multivector Multivector::grade(int g) const {
  Multivector out(generators_);
  for (Blade b = 0; b < coeffs_.size(); ++b) {
    if (blade_grade(b) == g) out.coeffs_[b] = coeffs_[b];
  }
  return out;
}

Multivector& Multivector::operator+=(Multivector const& other) {
  require_same(generators_, other.generators_, "Multivector::operator+=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(Multivector const& other) {
  require_same(generators_, other.generators_, "Multivector::operator-=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(Complex s) {
  for (Complex& c : coeffs_) c *= s;
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector out = *this;
  for (Complex& c : out.coeffs_) c = -c;
  return out;
}

void Multivector::add_scaled(Multivector const& other, Complex s) {
  require_same(generators_, other.generators_, "Multivector::add_scaled");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
}

void Multivector::add_scaled(Multivector const& other, double s) {
  require_same(generators_, other.generators_, "Multivector::add_scaled");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
}

Multivector operator+(Multivector a, Multivector const& b) { return a += b; }
Multivector operator-(Multivector a, Multivector const& b) { return a -= b; }
Multivector operator*(Complex s, Multivector a) { return a *= s; }
Multivector operator*(Multivector a, Complex s) { return a *= s; }

Multivector geometric_product(Multivector const& a, Multivector const& b) {
  require_same(a.generators(), b.generators(), "geometric_product");
  Multivector out(a.generators());
  auto const n = static_cast<Blade>(a.size());
  for (Blade i = 0; i < n; ++i) {
    Complex const ai = a[i];
    if (ai == Complex{}) continue;
    for (Blade j = 0; j < n; ++j) {
      Complex const bj = b[j];
      if (bj == Complex{}) continue;
      out[i ^ j] += static_cast<double>(blade_product_sign(i, j)) * ai * bj;
    }
  }
  return out;
}

Multivector operator*(Multivector const& a, Multivector const& b) {
  return geometric_product(a, b);
}

Multivector vector_times(Vector1 const& v, Multivector const& a) {
  require_same(v.dimension(), a.generators(), "vector_times");
  Multivector out(a.generators());
  auto const n = static_cast<Blade>(a.size());
  for (int j = 0; j < v.dimension(); ++j) {
    double const vj = v[j];
    if (vj == 0.0) continue;
    Blade const ej = Blade{1} << j;
    for (Blade b = 0; b < n; ++b) {
      out[ej ^ b] += (vj * blade_product_sign(ej, b)) * a[b];
    }
  }
  return out;
}

Multivector clifford_conjugate(Multivector const& a) {
  Multivector out = a;
  for (Blade b = 0; b < a.size(); ++b) {
    int const g = blade_grade(b);
    if (((g * (g + 1)) / 2) & 1) out[b] = -out[b];
  }
  return out;
}

Complex coeff_inner(Multivector const& u, Multivector const& v) {
  require_same(u.generators(), v.generators(), "coeff_inner");
  Complex s{};
  for (Blade b = 0; b < u.size(); ++b) s += u[b] * v[b];
  return s;
}

Complex coeff_inner_hermitian(Multivector const& u, Multivector const& v) {
  require_same(u.generators(), v.generators(), "coeff_inner_hermitian");
  Complex s{};
  for (Blade b = 0; b < u.size(); ++b) s += std::conj(u[b]) * v[b];
  return s;
}

Multivector wedge_vectors(Vector1 const& eta, Vector1 const& xi) {
  require_same(eta.dimension(), xi.dimension(), "wedge_vectors");
  int const n = eta.dimension();
  Multivector out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out[(Blade{1} << i) | (Blade{1} << j)] = eta[i] * xi[j] - eta[j] * xi[i];
    }
  }
  return out;
}

double distance(Multivector const& a, Multivector const& b) {
  require_same(a.generators(), b.generators(), "distance");
  double d = 0.0;
  for (Blade i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

nlohmann::json to_json(Multivector const& a) {
  nlohmann::json j = nlohmann::json::object();
  for (Blade b = 0; b < a.size(); ++b) {
    if (a[b] == Complex{}) continue;
    j[blade_to_string(b)] = {a[b].real(), a[b].imag()};
  }
  return j;
}

Multivector multivector_from_json(nlohmann::json const& j, int generators) {
  if (!j.is_object()) {
    throw std::invalid_argument("multivector must be a JSON object");
  }
  Multivector a(generators);
  for (auto const& [key, value] : j.items()) {
    Blade const b = blade_from_string(key, generators);
    if (value.is_number()) {
      a[b] = value.get<double>();
    } else if (value.is_array() && value.size() == 2) {
      a[b] = Complex(value[0].get<double>(), value[1].get<double>());
    } else {
      throw std::invalid_argument("coefficient for blade '" + key +
                                  "' must be [re, im]");
    }
  }
  return a;
}

}  // namespace ccst
