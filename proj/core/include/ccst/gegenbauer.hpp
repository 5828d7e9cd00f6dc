#pragma once

#include <span>
#include <vector>

namespace ccst {

/// Rising factorial (a)_j = a (a+1) ... (a+j-1); (a)_0 = 1.
double pochhammer(double a, int j);

/// C_k^ν(s) by the three-term recurrence
///   k C_k = 2 s (k+ν-1) C_{k-1} - (k+2ν-2) C_{k-2}.
/// Throws for k < 0, ν <= 0 or |s| > 1 + 1e-12.
double gegenbauer(int k, double nu, double s);

/// C_0^ν(s) .. C_K^ν(s) in one recurrence pass, written to out (size K+1).
void gegenbauer_table(double nu, double s, std::span<double> out);

/// Explicit alternating sum
///   Σ_{j=0}^{⌊k/2⌋} (-1)^j 2^{k-2j} (ν)_{k-j} / (j! (k-2j)!) s^{k-2j},
/// accumulated with Neumaier compensation. Cross-check path only; loses
/// relative accuracy for large k.
double gegenbauer_explicit(int k, double nu, double s);

double log_factorial(int n);

enum class KernelSide { plus, minus };

/// Natural log of the zonal-kernel growth bounds
///   plus:  (2k+m-1)!/(m-1)! · (k+2m-2)   bounds |C⁺_{m+1,k}|
///   minus: (2k+m-1)!/(m-1)! · (k+m-1)    bounds |C⁻_{m+1,k-1}|
/// Throws for m < 2 or k < 0.
double kernel_bound_log(int k, int m, KernelSide side);

/// log of (2k+m)!/(m-1)!, the bound on |C_k^{m/2}| on [-1, 1].
double gegenbauer_bound_log(int k, int m);

}  // namespace ccst
