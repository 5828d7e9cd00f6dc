#include "ccst/gegenbauer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccst {

namespace {

void check_arguments(int k, double nu, double s) {
  if (k < 0) throw std::invalid_argument("gegenbauer: negative degree");
  if (!(nu > 0.0)) throw std::invalid_argument("gegenbauer: nu must be positive");
  if (!(std::abs(s) <= 1.0 + 1e-12)) {
    throw std::invalid_argument("gegenbauer: argument outside [-1, 1]");
  }
}

}  // namespace

double pochhammer(double a, int j) {
  if (j < 0) throw std::invalid_argument("pochhammer: negative count");
  double p = 1.0;
  for (int i = 0; i < j; ++i) p *= a + i;
  return p;
}

double gegenbauer(int k, double nu, double s) {
  check_arguments(k, nu, s);
  if (k == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * nu * s;
  for (int n = 2; n <= k; ++n) {
    double const next = (2.0 * s * (n + nu - 1.0) * curr - (n + 2.0 * nu - 2.0) * prev) / n;
    prev = curr;
    curr = next;
  }
  return curr;
}

void gegenbauer_table(double nu, double s, std::span<double> out) {
  if (out.empty()) return;
  check_arguments(0, nu, s);
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 2.0 * nu * s;
  for (std::size_t n = 2; n < out.size(); ++n) {
    double const dn = static_cast<double>(n);
    out[n] = (2.0 * s * (dn + nu - 1.0) * out[n - 1] - (dn + 2.0 * nu - 2.0) * out[n - 2]) / dn;
  }
}

namespace {

#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
#else
using Wide = long double;
#endif

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

}  // namespace

double gegenbauer_explicit(int k, double nu, double s) {
  check_arguments(k, nu, s);
  // The alternating sum cancels by up to ~1e10 at k = 30, so terms are formed
  // and summed in a wider type.
  Wide const x = Wide(2) * Wide(s);
  Wide const v = nu;
  std::vector<Wide> terms;
  terms.reserve(static_cast<std::size_t>(k / 2 + 1));
  for (int j = 0; j <= k / 2; ++j) {
    int const p = k - 2 * j;
    // (ν)_{k-j} x^p / (j! p!)
    Wide term = (j & 1) ? Wide(-1) : Wide(1);
    for (int i = 0; i < k - j; ++i) term *= v + i;
    for (int i = 1; i <= j; ++i) term /= i;
    for (int i = 1; i <= p; ++i) term *= x / i;
    terms.push_back(term);
  }
  Wide sum = 0;
  Wide compensation = 0;
  for (Wide const term : terms) {
    Wide const t = sum + term;
    if (wide_abs(sum) >= wide_abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return static_cast<double>(sum + compensation);
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(n + 1.0);
}

double kernel_bound_log(int k, int m, KernelSide side) {
  if (m < 2) {
    throw std::invalid_argument("kernel_bound_log: bounds hold for m >= 2, got m = " +
                                std::to_string(m));
  }
  if (k < 0) throw std::invalid_argument("kernel_bound_log: negative degree");
  double const factor = side == KernelSide::plus ? k + 2.0 * m - 2.0 : k + m - 1.0;
  return log_factorial(2 * k + m - 1) - log_factorial(m - 1) + std::log(factor);
}

double gegenbauer_bound_log(int k, int m) {
  return log_factorial(2 * k + m) - log_factorial(m - 1);
}

}  // namespace ccst
