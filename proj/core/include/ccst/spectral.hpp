#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "ccst/sphere.hpp"

namespace ccst {

/// Which Γ-eigenspace family a component belongs to. P-side components of
/// index k have Γ-eigenvalue -k and harmonic degree k; Q-side components
/// of index l have Γ-eigenvalue l+m and harmonic degree l+1.
enum class Side { p, q };

/// Spherical-monogenic components of a sphere function up to harmonic
/// degree K: p_0..p_K and q_0..q_{K-1}.
struct SpectralDecomposition {
  int m = 0;
  int max_degree = 0;
  RulePtr rule;
  std::vector<SphereFunction> p;
  std::vector<SphereFunction> q;
  double residual_norm = 0.0;

  SphereFunction sum() const;
};

/// Harmonic degree of a component.
inline int harmonic_degree(Side side, int index) {
  return side == Side::p ? index : index + 1;
}

/// Γ-eigenvalue of a component.
inline double gamma_eigenvalue(int m, Side side, int index) {
  return side == Side::p ? -index : static_cast<double>(index + m);
}

/// Heat multiplier of a component, e^{-t h(h+m-1)/2} with h its harmonic
/// degree; this equals e^{-tk(k+m-1)/2} on p_k and e^{-t(l+1)(l+m)/2} on q_l.
double component_multiplier(int m, double t, Side side, int index);

/// η ↦ ∫ C⁺_{m+1,k}(η, ξ) f(ξ) dσ(ξ) at the rule's nodes (Fourier mode e^{Jkθ}
/// at m = 1, J = -e12).
SphereFunction project_p(SphereFunction const& f, int k);
/// η ↦ ∫ C⁻_{m+1,k}(η, ξ) f(ξ) dσ(ξ) (Fourier mode e^{-J(k+1)θ} at m = 1).
SphereFunction project_q(SphereFunction const& f, int k);

/// All components up to harmonic degree K. Requires rule exactness >= 2K+2.
SpectralDecomposition decompose(SphereFunction const& f, int max_degree);

/// m = 1 decomposition by discrete Fourier analysis in the angle.
SpectralDecomposition fourier_circle(SphereFunction const& f, int max_degree);

/// Scales every component by its heat multiplier. Throws for t < 0.
SpectralDecomposition heat_flow(SpectralDecomposition const& dec, double t);

/// Every component of f up to p_{max_p} and q_{max_q} at one unit direction,
/// in a single pass over the nodes.
void evaluate_components(SphereFunction const& f, int max_p, int max_q,
                         Vector1 const& direction, std::vector<Multivector>& p,
                         std::vector<Multivector>& q);

/// Value of a single component at an arbitrary unit direction, by the
/// reproducing property of its kernel against the stored node samples.
Multivector evaluate_component(SphereFunction const& component, Side side,
                               int index, Vector1 const& direction);

nlohmann::json to_json(SpectralDecomposition const& dec);

}  // namespace ccst
