#pragma once

#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccst/spectral.hpp"
#include "ccst/zonal.hpp"

namespace ccst {

/// Monogenic function on R^{m+1} \ {0} given by its Laurent expansion
///   F(x) = Σ_k |x|^k p_k(x/|x|) + Σ_l |x|^{-(l+m)} q_l(x/|x|),
/// with the spherical parts sampled on a quadrature rule.
struct LaurentMonogenic {
  int m = 0;
  int max_degree = 0;
  RulePtr rule;
  std::vector<SphereFunction> p;
  std::vector<SphereFunction> q;
  double r_min = 0.2;
  double r_max = 5.0;
  /// Heat time already applied to the components (0 for a bare extension).
  double t = 0.0;
};

/// Parameters of the radial measure dμ_t = ρ^t_m(log r) r^m dr dσ_m.
struct MeasureParams {
  int m = 1;
  double t = 1.0;
};

class AmplificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse heat multipliers above this are refused.
inline constexpr double kAmplificationCap = 1e12;

/// CK extension e^{-yΓ}: p_k carried to radial power k, q_l to -(l+m).
LaurentMonogenic ck_extend(SpectralDecomposition const& dec, double r_min = 0.2,
                           double r_max = 5.0);

/// Laurent sum at x. Off-node directions use each component's reproducing
/// kernel. Throws at the origin or outside [r_min, r_max].
Multivector evaluate_laurent(LaurentMonogenic const& f, Vector1 const& x);

/// The restriction to the unit sphere, Σ p_k + Σ q_l.
SphereFunction restrict_to_sphere(LaurentMonogenic const& f);

/// ρ^t_m(y) = e^{-t(m-1)²/4} / √(tπ) · e^{-y²/t - 2y}.
double rho_density(MeasureParams const& params, double y);

/// log ∫ ρ^t_m(y) e^{ay} dy = -t(m-1)²/4 + t(a-2)²/4.
double radial_moment_log(MeasureParams const& params, double a);

/// The same moment by composite Gauss-Legendre quadrature of rho_density
/// over [y_min, y_max], with the integrand rescaled by its sampled maximum.
double radial_moment_log_numeric(MeasureParams const& params, double a,
                                 double y_min = -60.0, double y_max = 60.0,
                                 int panels = 2400);

/// Exponent a with ∫ρ e^{ay} dy the radial weight of p_k: 2k+m+1.
double p_moment_exponent(int m, int k);
/// Exponent for q_l (weight r^{-2(l+m)} r^m dr): -(2l+m-1).
double q_moment_exponent(int m, int l);

/// ‖F‖ in ML²(R^{m+1} \ {0}, dμ_t), per mode with analytic radial integrals.
double ml2_norm(LaurentMonogenic const& f, MeasureParams const& params);

/// μ_t({|log r| > half_width}); μ_t has unit total mass.
double measure_mass_outside(MeasureParams const& params, double half_width);

/// U^t = CK ∘ e^{tΔ/2} on components up to harmonic degree K.
LaurentMonogenic cst_forward(SphereFunction const& f, double t, int max_degree);

/// Inverse on band-limited data. Throws AmplificationError when an inverse
/// multiplier would exceed kAmplificationCap.
SphereFunction cst_inverse(LaurentMonogenic const& f, double t);

/// Largest log inverse multiplier cst_inverse would apply.
double inverse_amplification_log(int m, double t, int max_degree);

/// Direct evaluation of U^t f(x) = ∫ K̃_t(x, ξ) f(ξ) dσ(ξ) by quadrature.
/// At m = 1 the circle kernel Σ_n e^{-tn²/2} r^n e^{Jn(θ_x - θ_ξ)} is used.
Multivector cst_direct(SphereFunction const& f, double t,
                       KernelTruncation const& trunc, Vector1 const& x);

/// The circle CK heat kernel Σ_{|n|<=N} e^{-tn²/2} |x|^n e^{Jn(θ_x - θ_ξ)},
/// J = -e12.
Multivector circle_ck_heat_kernel(double t, int max_mode, Vector1 const& x,
                                  Vector1 const& xi);

nlohmann::json to_json(LaurentMonogenic const& f, bool include_values);

}  // namespace ccst
