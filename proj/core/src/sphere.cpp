#include "ccst/sphere.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "ccst/format.hpp"

namespace ccst {

void gauss_jacobi_symmetric(int n, double a, std::vector<double>& nodes,
                            std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_symmetric: n < 1");
  // Golub-Welsch on the monic recurrence p_{j+1} = u p_j - β_j p_{j-1},
  // β_j = j (j+2a) / ((2j+2a+1)(2j+2a-1)).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j < n; ++j) {
    double const beta = j * (j + 2.0 * a) / ((2.0 * j + 2.0 * a + 1.0) * (2.0 * j + 2.0 * a - 1.0));
    jacobi(j, j - 1) = jacobi(j - 1, j) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = solver.eigenvalues()(i);
    double const v0 = solver.eigenvectors()(0, i);
    weights[i] = v0 * v0;
  }
  // Symmetrize against eigen-solver round-off so odd moments vanish.
  for (int i = 0; i < n / 2; ++i) {
    double const u = 0.5 * (nodes[n - 1 - i] - nodes[i]);
    double const w = 0.5 * (weights[i] + weights[n - 1 - i]);
    nodes[i] = -u;
    nodes[n - 1 - i] = u;
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n & 1) nodes[n / 2] = 0.0;
  double const total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
}

namespace {

QuadratureRule circle_rule(int degree) {
  QuadratureRule rule;
  rule.m = 1;
  rule.exactness_degree = degree;
  int const n = degree + 1;
  for (int i = 0; i < n; ++i) {
    double const theta = 2.0 * std::numbers::pi * i / n;
    rule.nodes.push_back(Vector1{std::cos(theta), std::sin(theta)});
    rule.weights.push_back(1.0 / n);
  }
  return rule;
}

QuadratureRule sphere_rule(int m, int degree) {
  if (m == 1) return circle_rule(degree);
  QuadratureRule const inner = sphere_rule(m - 1, degree);
  std::vector<double> u;
  std::vector<double> wu;
  gauss_jacobi_symmetric(degree / 2 + 1, 0.5 * (m - 2), u, wu);

  QuadratureRule rule;
  rule.m = m;
  rule.exactness_degree = degree;
  rule.nodes.reserve(u.size() * inner.size());
  rule.weights.reserve(u.size() * inner.size());
  for (std::size_t a = 0; a < u.size(); ++a) {
    double const radius = std::sqrt(std::max(0.0, 1.0 - u[a] * u[a]));
    for (std::size_t b = 0; b < inner.size(); ++b) {
      std::vector<double> x(m + 1);
      for (int i = 0; i < m; ++i) x[i] = radius * inner.nodes[b][i];
      x[m] = u[a];
      rule.nodes.emplace_back(std::move(x));
      rule.weights.push_back(wu[a] * inner.weights[b]);
    }
  }
  return rule;
}

}  // namespace

RulePtr build_quadrature(int m, int degree) {
  if (m < 1 || m > 4) {
    throw std::invalid_argument("build_quadrature: unsupported sphere dimension m = " +
                                std::to_string(m));
  }
  if (degree < 0 || degree > kMaxQuadratureDegree) {
    throw std::invalid_argument("build_quadrature: unsupported degree " +
                                std::to_string(degree));
  }
  return std::make_shared<QuadratureRule const>(sphere_rule(m, degree));
}

// ---------------------------------------------------------- SphereFunction

SphereFunction::SphereFunction(RulePtr rule, std::vector<Multivector> values)
    : rule_(std::move(rule)), values_(std::move(values)) {
  if (values_.size() != rule_->size()) {
    throw std::invalid_argument("SphereFunction: value count " +
                                std::to_string(values_.size()) + " != node count " +
                                std::to_string(rule_->size()));
  }
  for (Multivector const& v : values_) {
    if (v.generators() != rule_->generators()) {
      throw std::invalid_argument("SphereFunction: algebra dimension mismatch");
    }
  }
}

SphereFunction::SphereFunction(RulePtr rule)
    : rule_(std::move(rule)),
      values_(rule_->size(), Multivector(rule_->generators())) {}

SphereFunction SphereFunction::sample(
    RulePtr rule, std::function<Multivector(Vector1 const&)> const& f) {
  std::vector<Multivector> values;
  values.reserve(rule->size());
  for (Vector1 const& node : rule->nodes) values.push_back(f(node));
  return SphereFunction(std::move(rule), std::move(values));
}

namespace {

void require_same_rule(SphereFunction const& a, SphereFunction const& b) {
  if (a.rule() != b.rule()) {
    throw std::invalid_argument("sphere functions live on different quadrature rules");
  }
}

}  // namespace

SphereFunction& SphereFunction::operator+=(SphereFunction const& other) {
  require_same_rule(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SphereFunction& SphereFunction::operator-=(SphereFunction const& other) {
  require_same_rule(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

SphereFunction& SphereFunction::operator*=(Complex s) {
  for (Multivector& v : values_) v *= s;
  return *this;
}

double SphereFunction::max_abs() const {
  double m = 0.0;
  for (Multivector const& v : values_) m = std::max(m, v.max_abs());
  return m;
}

SphereFunction operator+(SphereFunction a, SphereFunction const& b) { return a += b; }
SphereFunction operator-(SphereFunction a, SphereFunction const& b) { return a -= b; }
SphereFunction operator*(Complex s, SphereFunction a) { return a *= s; }

Multivector integrate(SphereFunction const& f) {
  Multivector out(f.generators());
  auto const& w = f.rule()->weights;
  for (std::size_t i = 0; i < f.size(); ++i) out.add_scaled(f[i], w[i]);
  return out;
}

Complex l2_inner(SphereFunction const& f, SphereFunction const& g) {
  require_same_rule(f, g);
  Complex s{};
  auto const& w = f.rule()->weights;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * coeff_inner_hermitian(f[i], g[i]);
  return s;
}

double l2_norm(SphereFunction const& f) {
  double s = 0.0;
  auto const& w = f.rule()->weights;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double const n = f[i].norm();
    s += w[i] * n * n;
  }
  return std::sqrt(s);
}

void write_rule_csv(QuadratureRule const& rule, std::ostream& out) {
  for (int j = 1; j <= rule.m + 1; ++j) out << 'x' << j << ',';
  out << "weight\n";
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (int j = 0; j <= rule.m; ++j) out << format_double(rule.nodes[i][j]) << ',';
    out << format_double(rule.weights[i]) << '\n';
  }
}

}  // namespace ccst
