#include "ccst/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ccst {

namespace {

void require_same(int a, int b, char const* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
  }
}

Blade unit_blade(int j) { return Blade{1} << (j - 1); }

// All exponent vectors of total degree d in n variables, lexicographic.
void enumerate_exponents(int n, int d, Exponents& current, int position,
                         std::vector<Exponents>& out) {
  if (position == n - 1) {
    current[position] = d;
    out.push_back(current);
    return;
  }
  for (int a = d; a >= 0; --a) {
    current[position] = a;
    enumerate_exponents(n, d - a, current, position + 1, out);
  }
}

std::vector<Exponents> exponents_of_degree(int n, int d) {
  std::vector<Exponents> out;
  if (d < 0) return out;
  Exponents current(n, 0);
  enumerate_exponents(n, d, current, 0, out);
  return out;
}

}  // namespace

MvPolynomial::MvPolynomial(int generators) : generators_(generators) {}

MvPolynomial MvPolynomial::constant(Multivector const& c) {
  MvPolynomial p(c.generators());
  p.add_term(Exponents(c.generators(), 0), c);
  return p;
}

MvPolynomial MvPolynomial::coordinate(int generators, int j,
                                      Multivector const& c) {
  Exponents e(generators, 0);
  e.at(j - 1) = 1;
  return monomial(std::move(e), c);
}

MvPolynomial MvPolynomial::monomial(Exponents exponents, Multivector const& c) {
  require_same(static_cast<int>(exponents.size()), c.generators(),
               "MvPolynomial::monomial");
  MvPolynomial p(c.generators());
  p.add_term(exponents, c);
  return p;
}

MvPolynomial MvPolynomial::norm_squared(int generators) {
  MvPolynomial p(generators);
  for (int j = 1; j <= generators; ++j) {
    Exponents e(generators, 0);
    e[j - 1] = 2;
    p.add_term(e, Multivector::scalar(generators, 1.0));
  }
  return p;
}

void MvPolynomial::add_term(Exponents const& exponents, Multivector const& c) {
  require_same(generators_, c.generators(), "MvPolynomial::add_term");
  require_same(generators_, static_cast<int>(exponents.size()),
               "MvPolynomial::add_term");
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) it->second += c;
}

int MvPolynomial::degree() const {
  int d = -1;
  for (auto const& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    d = std::max(d, s);
  }
  return d;
}

bool MvPolynomial::is_homogeneous(int degree) const {
  for (auto const& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    if (s != degree && c.max_abs() != 0.0) return false;
  }
  return true;
}

MvPolynomial MvPolynomial::homogeneous_part(int degree) const {
  MvPolynomial out(generators_);
  for (auto const& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    if (s == degree) out.terms_.emplace(e, c);
  }
  return out;
}

double MvPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (auto const& [e, c] : terms_) m = std::max(m, c.max_abs());
  return m;
}

MvPolynomial MvPolynomial::pruned(double tol) const {
  MvPolynomial out(generators_);
  for (auto const& [e, c] : terms_) {
    if (c.max_abs() > tol) out.terms_.emplace(e, c);
  }
  return out;
}

MvPolynomial& MvPolynomial::operator+=(MvPolynomial const& other) {
  require_same(generators_, other.generators_, "MvPolynomial::operator+=");
  for (auto const& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MvPolynomial& MvPolynomial::operator-=(MvPolynomial const& other) {
  require_same(generators_, other.generators_, "MvPolynomial::operator-=");
  for (auto const& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MvPolynomial& MvPolynomial::operator*=(Complex s) {
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MvPolynomial MvPolynomial::times_right(Multivector const& c) const {
  MvPolynomial out(generators_);
  for (auto const& [e, a] : terms_) out.terms_.emplace(e, a * c);
  return out;
}

MvPolynomial MvPolynomial::times_left(Multivector const& c) const {
  MvPolynomial out(generators_);
  for (auto const& [e, a] : terms_) out.terms_.emplace(e, c * a);
  return out;
}

MvPolynomial MvPolynomial::vector_variable_times() const {
  MvPolynomial out(generators_);
  for (int j = 1; j <= generators_; ++j) {
    Multivector const ej = Multivector::blade(generators_, unit_blade(j));
    for (auto const& [e, a] : terms_) {
      Exponents raised = e;
      ++raised[j - 1];
      out.add_term(raised, ej * a);
    }
  }
  return out;
}

MvPolynomial MvPolynomial::times_scalar_polynomial(MvPolynomial const& s) const {
  require_same(generators_, s.generators_, "times_scalar_polynomial");
  MvPolynomial out(generators_);
  for (auto const& [es, cs] : s.terms_) {
    Complex const factor = cs[0];
    for (auto const& [e, a] : terms_) {
      Exponents sum = e;
      for (int i = 0; i < generators_; ++i) sum[i] += es[i];
      out.add_term(sum, factor * a);
    }
  }
  return out;
}

MvPolynomial MvPolynomial::partial(int j) const {
  MvPolynomial out(generators_);
  for (auto const& [e, a] : terms_) {
    int const power = e.at(j - 1);
    if (power == 0) continue;
    Exponents lowered = e;
    --lowered[j - 1];
    out.add_term(lowered, Complex(power) * a);
  }
  return out;
}

MvPolynomial MvPolynomial::angular(int i, int j) const {
  // x_i ∂_j - x_j ∂_i
  MvPolynomial out(generators_);
  for (auto const& [e, a] : terms_) {
    if (int const pj = e[j - 1]; pj > 0) {
      Exponents f = e;
      --f[j - 1];
      ++f[i - 1];
      out.add_term(f, Complex(pj) * a);
    }
    if (int const pi = e[i - 1]; pi > 0) {
      Exponents f = e;
      --f[i - 1];
      ++f[j - 1];
      out.add_term(f, Complex(-pi) * a);
    }
  }
  return out;
}

Multivector MvPolynomial::evaluate(Vector1 const& x) const {
  require_same(generators_, x.dimension(), "MvPolynomial::evaluate");
  Multivector out(generators_);
  for (auto const& [e, a] : terms_) {
    double v = 1.0;
    for (int i = 0; i < generators_; ++i) {
      for (int p = 0; p < e[i]; ++p) v *= x[i];
    }
    out.add_scaled(a, v);
  }
  return out;
}

MvPolynomial operator+(MvPolynomial a, MvPolynomial const& b) { return a += b; }
MvPolynomial operator-(MvPolynomial a, MvPolynomial const& b) { return a -= b; }
MvPolynomial operator*(Complex s, MvPolynomial a) { return a *= s; }

MvPolynomial dirac(MvPolynomial const& p) {
  int const n = p.generators();
  MvPolynomial out(n);
  for (int j = 1; j <= n; ++j) {
    out += p.partial(j).times_left(Multivector::blade(n, unit_blade(j)));
  }
  return out;
}

MvPolynomial gamma(MvPolynomial const& p) {
  int const n = p.generators();
  MvPolynomial out(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      Multivector const eij =
          Multivector::blade(n, unit_blade(i) | unit_blade(j), -1.0);
      out += p.angular(i, j).times_left(eij);
    }
  }
  return out;
}

MvPolynomial laplacian(MvPolynomial const& p) {
  MvPolynomial out(p.generators());
  for (int j = 1; j <= p.generators(); ++j) out += p.partial(j).partial(j);
  return out;
}

MvPolynomial euler(MvPolynomial const& p) {
  MvPolynomial out(p.generators());
  for (auto const& [e, a] : p.terms()) {
    int d = 0;
    for (int v : e) d += v;
    out.add_term(e, Complex(d) * a);
  }
  return out;
}

MvPolynomial spherical_laplacian(MvPolynomial const& p) {
  int const d = p.degree();
  if (d < 0) return MvPolynomial(p.generators());
  if (!p.is_homogeneous(d)) {
    throw std::invalid_argument("spherical_laplacian needs a homogeneous input");
  }
  int const m = p.generators() - 1;
  MvPolynomial out = laplacian(p).times_scalar_polynomial(
      MvPolynomial::norm_squared(p.generators()));
  MvPolynomial scaled = p;
  scaled *= Complex(-static_cast<double>(d) * (d + m - 1));
  out += scaled;
  return out;
}

double distance(MvPolynomial const& a, MvPolynomial const& b) {
  return (a - b).max_abs_coefficient();
}

std::vector<MvPolynomial> monogenic_basis(int m, int k) {
  if (m < 1 || m + 1 > kMaxGenerators || k < 0) {
    throw std::invalid_argument("monogenic_basis: need 1 <= m <= 6, k >= 0");
  }
  int const n = m + 1;
  std::size_t const blades = std::size_t{1} << n;
  std::vector<MvPolynomial> basis;
  if (k == 0) {
    for (Blade b = 0; b < blades; ++b) {
      basis.push_back(MvPolynomial::constant(Multivector::blade(n, b)));
    }
    return basis;
  }

  std::vector<Exponents> const cols = exponents_of_degree(n, k);
  std::vector<Exponents> const rows = exponents_of_degree(n, k - 1);
  std::map<Exponents, std::size_t> row_index;
  for (std::size_t r = 0; r < rows.size(); ++r) row_index[rows[r]] = r;

  // Unknown (α, A) is the real coefficient of x^α e_A.
  Eigen::MatrixXd dmat =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size() * blades),
                            static_cast<Eigen::Index>(cols.size() * blades));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (int j = 0; j < n; ++j) {
      int const power = cols[c][j];
      if (power == 0) continue;
      Exponents lowered = cols[c];
      --lowered[j];
      std::size_t const r = row_index.at(lowered);
      Blade const ej = Blade{1} << j;
      for (Blade a = 0; a < blades; ++a) {
        dmat(static_cast<Eigen::Index>(r * blades + (ej ^ a)),
             static_cast<Eigen::Index>(c * blades + a)) +=
            power * blade_product_sign(ej, a);
      }
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(dmat, Eigen::ComputeFullV);
  Eigen::VectorXd const& sv = svd.singularValues();
  double const threshold = 1e-10 * (sv.size() > 0 ? sv(0) : 1.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > threshold) ++rank;
  Eigen::MatrixXd const& v = svd.matrixV();

  for (Eigen::Index col = rank; col < v.cols(); ++col) {
    MvPolynomial p(n);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Multivector coeff(n);
      bool any = false;
      for (Blade a = 0; a < blades; ++a) {
        double const value = v(static_cast<Eigen::Index>(c * blades + a), col);
        if (std::abs(value) > 1e-15) {
          coeff[a] = value;
          any = true;
        }
      }
      if (any) p.add_term(cols[c], coeff);
    }
    basis.push_back(std::move(p));
  }
  return basis;
}

std::vector<MvPolynomial> const& monogenic_basis_cached(int m, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<MvPolynomial>> cache;
  std::scoped_lock lock(mutex);
  auto it = cache.find({m, k});
  if (it == cache.end()) it = cache.emplace(std::pair{m, k}, monogenic_basis(m, k)).first;
  return it->second;
}

std::size_t monogenic_dimension(int m, int k) {
  return monogenic_basis_cached(m, k).size();
}

PointEvaluator inversion(PointEvaluator f) {
  return [f = std::move(f)](Vector1 const& x) {
    double const r2 = x.dot(x);
    if (r2 == 0.0) throw std::domain_error("inversion: evaluation at the origin");
    int const m = x.dimension() - 1;
    double const r = std::sqrt(r2);
    Vector1 const inverted = (1.0 / r2) * x;
    return vector_times((1.0 / std::pow(r, m + 1)) * x, f(inverted));
  };
}

Multivector cauchy_kernel(Vector1 const& x) {
  double const r = x.norm();
  if (r == 0.0) throw std::domain_error("cauchy_kernel: origin");
  int const m = x.dimension() - 1;
  return clifford_conjugate(Multivector::from_vector(x)) *
         Complex(1.0 / std::pow(r, m + 1));
}

Multivector dirac_residual_fd(PointEvaluator const& f, Vector1 const& x,
                              double step, int order) {
  if (!(step > 0.0)) throw std::invalid_argument("dirac_residual_fd: step must be positive");
  if (order != 2 && order != 4) throw std::invalid_argument("dirac_residual_fd: order is 2 or 4");
  int const n = x.dimension();
  Multivector out(n);
  for (int j = 1; j <= n; ++j) {
    Vector1 const h = step * Vector1::basis(n, j);
    Multivector diff = f(x + h) - f(x - h);
    if (order == 2) {
      diff *= Complex(1.0 / (2.0 * step));
    } else {
      diff *= Complex(8.0);
      diff -= f(x + 2.0 * h) - f(x - 2.0 * h);
      diff *= Complex(1.0 / (12.0 * step));
    }
    out += Multivector::blade(n, unit_blade(j)) * diff;
  }
  return out;
}

nlohmann::json to_json(MvPolynomial const& p) {
  nlohmann::json out = nlohmann::json::array();
  for (auto const& [e, c] : p.terms()) {
    out.push_back({{"exponents", e}, {"coefficient", to_json(c)}});
  }
  return out;
}

MvPolynomial polynomial_from_json(nlohmann::json const& j, int generators) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON list");
  MvPolynomial p(generators);
  for (auto const& term : j) {
    auto exponents = term.at("exponents").get<Exponents>();
    if (static_cast<int>(exponents.size()) != generators ||
        std::any_of(exponents.begin(), exponents.end(),
                    [](int a) { return a < 0; })) {
      throw std::invalid_argument("polynomial term has bad exponents");
    }
    p.add_term(exponents, multivector_from_json(term.at("coefficient"), generators));
  }
  return p;
}

}  // namespace ccst
