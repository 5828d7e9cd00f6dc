#include "ccst/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ccst/gegenbauer.hpp"

namespace ccst {

namespace {

void require_kernel_m(int m) {
  if (m < 2) {
    throw std::invalid_argument(
        "zonal kernels degenerate at m = 1; use the circle (Fourier) path");
  }
}

void require_unit(Vector1 const& v, char const* name) {
  if (std::abs(v.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(name) + " must be a unit vector");
  }
}

double clamp_cosine(double s) { return std::clamp(s, -1.0, 1.0); }

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double const hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

double heat_multiplier(int m, double t, int k) {
  return std::exp(-t * k * (k + m - 1.0) / 2.0);
}

double truncation_term_log(int m, double t, int k, double r_min, double r_max) {
  double const bound = m >= 2 ? kernel_bound_log(k, m, KernelSide::plus) : 0.0;
  double const radial =
      std::max(k * std::log(r_max), -(k + m - 1.0) * std::log(r_min));
  return -t * k * (k + m - 1.0) / 2.0 + bound + radial;
}

KernelTruncation plan_truncation(int m, double t, double tolerance, double r_min,
                                 double r_max) {
  if (!(t > 0.0)) throw std::invalid_argument("plan_truncation: t must be positive");
  if (!(r_min > 0.0) || !(r_max >= r_min)) {
    throw std::invalid_argument("plan_truncation: bad radial window");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("plan_truncation: bad tolerance");
  constexpr int kLimit = 20000;
  double const log_tol = std::log(tolerance);

  // Terms eventually fall like e^{-tk²/2}; stop once well past the peak and
  // far below the tolerance.
  std::vector<double> terms;
  for (int k = 0; k <= kLimit; ++k) {
    double const term = truncation_term_log(m, t, k, r_min, r_max);
    terms.push_back(term);
    bool const decreasing = k > 0 && term < terms[k - 1];
    if (decreasing && term < log_tol - 60.0) break;
    if (k == kLimit) {
      throw std::runtime_error("plan_truncation: series tail does not close");
    }
  }
  std::vector<double> suffix(terms.size() + 1, -std::numeric_limits<double>::infinity());
  for (std::size_t k = terms.size(); k-- > 0;) suffix[k] = log_sum_exp(suffix[k + 1], terms[k]);

  KernelTruncation plan{0, 0.0, t, r_min, r_max, tolerance};
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (suffix[k + 1] <= log_tol) {
      plan.max_degree = static_cast<int>(k);
      plan.tail_bound_log = suffix[k + 1];
      return plan;
    }
  }
  throw std::runtime_error("plan_truncation: no admissible degree");
}

Multivector czplus(int m, int k, Vector1 const& eta, Vector1 const& xi) {
  require_kernel_m(m);
  if (k < 0) throw std::invalid_argument("czplus: negative degree");
  require_unit(eta, "eta");
  require_unit(xi, "xi");
  double const s = clamp_cosine(eta.dot(xi));
  double const low = gegenbauer(k, (m - 1) / 2.0, s);
  double const high = k >= 1 ? gegenbauer(k - 1, (m + 1) / 2.0, s) : 0.0;
  double const pre = 1.0 / (1.0 - m);
  Multivector out = Multivector::scalar(m + 1, pre * (-(m + k - 1.0) * low));
  out.add_scaled(wedge_vectors(eta, xi), pre * (1.0 - m) * high);
  return out;
}

Multivector czminus(int m, int j, Vector1 const& eta, Vector1 const& xi) {
  require_kernel_m(m);
  if (j < -1) throw std::invalid_argument("czminus: index below -1");
  require_unit(eta, "eta");
  require_unit(xi, "xi");
  if (j == -1) return Multivector(m + 1);
  int const k = j + 1;
  double const s = clamp_cosine(eta.dot(xi));
  double const low = gegenbauer(k, (m - 1) / 2.0, s);
  double const high = gegenbauer(k - 1, (m + 1) / 2.0, s);
  double const pre = 1.0 / (m - 1.0);
  Multivector out = Multivector::scalar(m + 1, pre * k * low);
  out.add_scaled(wedge_vectors(eta, xi), pre * (1.0 - m) * high);
  return out;
}

ZonalTable::ZonalTable(int m, int max_degree)
    : m_(m), max_degree_(max_degree), low_(max_degree + 1), high_(std::max(max_degree, 1)) {
  require_kernel_m(m);
  if (max_degree < 0) throw std::invalid_argument("ZonalTable: negative degree");
}

void ZonalTable::evaluate(double s) {
  s = clamp_cosine(s);
  gegenbauer_table((m_ - 1) / 2.0, s, low_);
  gegenbauer_table((m_ + 1) / 2.0, s, high_);
}

ZonalCoefficients ZonalTable::plus(int k) const {
  return {(m_ + k - 1.0) / (m_ - 1.0) * low_[k], k >= 1 ? high_[k - 1] : 0.0};
}

ZonalCoefficients ZonalTable::minus(int j) const {
  int const k = j + 1;
  return {k / (m_ - 1.0) * low_[k], -high_[k - 1]};
}

Multivector heat_kernel(int m, double t, KernelTruncation const& trunc,
                        Vector1 const& eta, Vector1 const& xi) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t must be positive");
  require_kernel_m(m);
  Multivector out(m + 1);
  for (int k = 0; k <= trunc.max_degree; ++k) {
    double const mult = heat_multiplier(m, t, k);
    if (mult == 0.0) break;
    out.add_scaled(czplus(m, k, eta, xi), mult);
    out.add_scaled(czminus(m, k - 1, eta, xi), mult);
  }
  return out;
}

Multivector ck_heat_kernel(int m, double t, KernelTruncation const& trunc,
                           Vector1 const& x, Vector1 const& xi) {
  if (!(t > 0.0)) throw std::invalid_argument("ck_heat_kernel: t must be positive");
  require_kernel_m(m);
  double const r = x.norm();
  if (r == 0.0) throw std::domain_error("ck_heat_kernel: origin");
  if (r < trunc.r_min * (1.0 - 1e-12) || r > trunc.r_max * (1.0 + 1e-12)) {
    throw std::domain_error("ck_heat_kernel: radius outside the truncation window");
  }
  Vector1 const eta = (1.0 / r) * x;
  double const log_r = std::log(r);
  Multivector out(m + 1);
  for (int k = 0; k <= trunc.max_degree; ++k) {
    double const log_mult = -t * k * (k + m - 1.0) / 2.0;
    double const inner = std::exp(log_mult + k * log_r);
    double const outer = std::exp(log_mult - (k + m - 1.0) * log_r);
    if (inner == 0.0 && outer == 0.0) break;
    out.add_scaled(czplus(m, k, eta, xi), inner);
    if (k >= 1) out.add_scaled(czminus(m, k - 1, eta, xi), outer);
  }
  return out;
}

std::vector<KernelTableRow> kernel_table(int m, KernelTruncation const& trunc,
                                         int last_degree) {
  std::vector<KernelTableRow> rows;
  for (int k = 0; k <= last_degree; ++k) {
    rows.push_back({k, heat_multiplier(m, trunc.t, k),
                    kernel_bound_log(k, m, KernelSide::plus),
                    k <= trunc.max_degree});
  }
  return rows;
}

}  // namespace ccst
