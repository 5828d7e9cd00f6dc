#pragma once

#include <vector>

#include "ccst/clifford.hpp"

namespace ccst {

/// Truncation plan for the heat-kernel series on a radial window. The tail
/// estimate uses the factorial growth bounds of the zonal kernels, so it is
/// very conservative at small t.
struct KernelTruncation {
  int max_degree = 0;
  double tail_bound_log = 0.0;
  double t = 1.0;
  double r_min = 0.2;
  double r_max = 5.0;
  double tolerance = 1e-12;
};

/// Smallest K with
///   Σ_{k>K} e^{-tk(k+m-1)/2} exp(kernel_bound_log(k, m, plus))
///           · max(r_max^k, r_min^{-(k+m-1)}) <= tolerance.
/// At m = 1 the circle kernels have unit coefficient bound.
KernelTruncation plan_truncation(int m, double t, double tolerance = 1e-12,
                                 double r_min = 0.2, double r_max = 5.0);

/// Log of one term of the tail sum above.
double truncation_term_log(int m, double t, int k, double r_min, double r_max);

/// Heat multiplier e^{-tk(k+m-1)/2} for harmonic degree k.
double heat_multiplier(int m, double t, int k);

/// C⁺_{m+1,k}(η, ξ) = (m+k-1)/(m-1) C_k^{(m-1)/2}(s) + C_{k-1}^{(m+1)/2}(s) η∧ξ,
/// s = <η, ξ>, with C_{-1} = 0. Requires m >= 2 and unit η, ξ.
Multivector czplus(int m, int k, Vector1 const& eta, Vector1 const& xi);

/// C⁻_{m+1,j}(η, ξ) with j = k - 1:
///   k/(m-1) C_k^{(m-1)/2}(s) - C_{k-1}^{(m+1)/2}(s) η∧ξ,
/// and 0 for j = -1. Reproducing kernel of ℳ⁻(m+1, j).
Multivector czminus(int m, int j, Vector1 const& eta, Vector1 const& xi);

/// Scalar coefficients of the zonal kernels in the form α + β η∧ξ.
struct ZonalCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Evaluates α, β of C⁺_{m+1,k} for k = 0..K and of C⁻_{m+1,k-1} for
/// k = 1..K at one value of s, sharing the Gegenbauer recurrences.
class ZonalTable {
 public:
  ZonalTable(int m, int max_degree);
  void evaluate(double s);
  ZonalCoefficients plus(int k) const;
  /// Kernel C⁻_{m+1,j}, j = 0..K-1.
  ZonalCoefficients minus(int j) const;

 private:
  int m_;
  int max_degree_;
  std::vector<double> low_;   // C_k^{(m-1)/2}
  std::vector<double> high_;  // C_k^{(m+1)/2}
};

/// K_t(η, ξ) = Σ_{k<=K} e^{-tk(k+m-1)/2} (C⁺_{m+1,k} + C⁻_{m+1,k-1}).
Multivector heat_kernel(int m, double t, KernelTruncation const& trunc,
                        Vector1 const& eta, Vector1 const& xi);

/// CK extension of K_t in its first variable:
///   Σ_k e^{-tk(k+m-1)/2} [|x|^k C⁺_{m+1,k}(x/|x|, ξ)
///                         + |x|^{-(k+m-1)} C⁻_{m+1,k-1}(x/|x|, ξ)].
/// Throws at the origin or outside the truncation's radial window.
Multivector ck_heat_kernel(int m, double t, KernelTruncation const& trunc,
                           Vector1 const& x, Vector1 const& xi);

struct KernelTableRow {
  int k = 0;
  double multiplier = 0.0;
  double bound_log = 0.0;
  bool retained = false;
};

/// Rows k = 0..last_degree of the truncation bookkeeping.
std::vector<KernelTableRow> kernel_table(int m, KernelTruncation const& trunc,
                                         int last_degree);

}  // namespace ccst
