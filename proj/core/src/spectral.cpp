#include "ccst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ccst/zonal.hpp"

namespace ccst {

namespace {

// Sums of kernel-weighted samples for one target direction, holding every
// P-side index 0..max_p and Q-side index 0..max_q.
class KernelAccumulator {
 public:
  KernelAccumulator(SphereFunction const& f, int max_p, int max_q)
      : f_(f), m_(f.rule()->m), max_p_(max_p), max_q_(max_q) {
    auto const& nodes = f.rule()->nodes;
    aux_.reserve(f.size());
    if (m_ == 1) {
      Multivector const e12 = Multivector::blade(2, 0b11);
      for (std::size_t j = 0; j < f.size(); ++j) aux_.push_back(e12 * f[j]);
    } else {
      // C f = (α + β η∧ξ) f = (α + β s) f + β η (ξ f).
      for (std::size_t j = 0; j < f.size(); ++j) aux_.push_back(vector_times(nodes[j], f[j]));
    }
  }

  void run(Vector1 const& eta, std::vector<Multivector>& p,
           std::vector<Multivector>& q) const {
    int const n = m_ + 1;
    p.assign(max_p_ + 1, Multivector(n));
    q.assign(std::max(max_q_ + 1, 0), Multivector(n));
    if (m_ == 1) {
      run_circle(eta, p, q);
    } else {
      run_zonal(eta, p, q);
    }
  }

 private:
  void run_zonal(Vector1 const& eta, std::vector<Multivector>& p,
                 std::vector<Multivector>& q) const {
    int const n = m_ + 1;
    int const top = std::max(max_p_, max_q_ + 1);
    ZonalTable table(m_, std::max(top, 1));
    std::vector<Multivector> bp(p.size(), Multivector(n));
    std::vector<Multivector> bq(q.size(), Multivector(n));
    auto const& nodes = f_.rule()->nodes;
    auto const& weights = f_.rule()->weights;
    for (std::size_t j = 0; j < f_.size(); ++j) {
      double const s = std::clamp(eta.dot(nodes[j]), -1.0, 1.0);
      table.evaluate(s);
      double const w = weights[j];
      for (int k = 0; k <= max_p_; ++k) {
        ZonalCoefficients const c = table.plus(k);
        p[k].add_scaled(f_[j], w * (c.alpha + c.beta * s));
        if (c.beta != 0.0) bp[k].add_scaled(aux_[j], w * c.beta);
      }
      for (int l = 0; l <= max_q_; ++l) {
        ZonalCoefficients const c = table.minus(l);
        q[l].add_scaled(f_[j], w * (c.alpha + c.beta * s));
        bq[l].add_scaled(aux_[j], w * c.beta);
      }
    }
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += vector_times(eta, bp[k]);
    for (std::size_t l = 0; l < q.size(); ++l) q[l] += vector_times(eta, bq[l]);
  }

  // Mode e^{Jnθ} with J = -e12: kernel e^{Jn(θ_η - θ_ξ)} = cos(nΔ) - sin(nΔ) e12.
  void run_circle(Vector1 const& eta, std::vector<Multivector>& p,
                  std::vector<Multivector>& q) const {
    auto const& nodes = f_.rule()->nodes;
    auto const& weights = f_.rule()->weights;
    for (std::size_t j = 0; j < f_.size(); ++j) {
      double const delta = std::atan2(eta[1] * nodes[j][0] - eta[0] * nodes[j][1],
                                      eta[0] * nodes[j][0] + eta[1] * nodes[j][1]);
      double const w = weights[j];
      for (int k = 0; k <= max_p_; ++k) {
        p[k].add_scaled(f_[j], w * std::cos(k * delta));
        p[k].add_scaled(aux_[j], -w * std::sin(k * delta));
      }
      for (int l = 0; l <= max_q_; ++l) {
        double const nd = -(l + 1.0) * delta;
        q[l].add_scaled(f_[j], w * std::cos(nd));
        q[l].add_scaled(aux_[j], -w * std::sin(nd));
      }
    }
  }

  SphereFunction const& f_;
  int m_;
  int max_p_;
  int max_q_;
  std::vector<Multivector> aux_;
};

void require_supported(SphereFunction const& f) {
  if (!f.rule()) throw std::invalid_argument("sphere function without a rule");
}

// Collocated projections at every node.
void project_all(SphereFunction const& f, int max_p, int max_q,
                 std::vector<SphereFunction>& p, std::vector<SphereFunction>& q) {
  KernelAccumulator const acc(f, max_p, max_q);
  RulePtr const& rule = f.rule();
  std::vector<std::vector<Multivector>> pv(max_p + 1);
  std::vector<std::vector<Multivector>> qv(std::max(max_q + 1, 0));
  for (auto& v : pv) v.reserve(rule->size());
  for (auto& v : qv) v.reserve(rule->size());
  std::vector<Multivector> pk;
  std::vector<Multivector> ql;
  for (std::size_t i = 0; i < rule->size(); ++i) {
    acc.run(rule->nodes[i], pk, ql);
    for (int k = 0; k <= max_p; ++k) pv[k].push_back(std::move(pk[k]));
    for (int l = 0; l <= max_q; ++l) qv[l].push_back(std::move(ql[l]));
  }
  p.clear();
  q.clear();
  for (auto& v : pv) p.emplace_back(rule, std::move(v));
  for (auto& v : qv) q.emplace_back(rule, std::move(v));
}

}  // namespace

SphereFunction SpectralDecomposition::sum() const {
  SphereFunction total(rule);
  for (SphereFunction const& c : p) total += c;
  for (SphereFunction const& c : q) total += c;
  return total;
}

double component_multiplier(int m, double t, Side side, int index) {
  int const h = harmonic_degree(side, index);
  return std::exp(-t * h * (h + m - 1.0) / 2.0);
}

SphereFunction project_p(SphereFunction const& f, int k) {
  require_supported(f);
  if (k < 0) throw std::invalid_argument("project_p: negative degree");
  std::vector<SphereFunction> p;
  std::vector<SphereFunction> q;
  project_all(f, k, -1, p, q);
  return std::move(p[k]);
}

SphereFunction project_q(SphereFunction const& f, int k) {
  require_supported(f);
  if (k < 0) throw std::invalid_argument("project_q: negative index");
  std::vector<SphereFunction> p;
  std::vector<SphereFunction> q;
  project_all(f, 0, k, p, q);
  return std::move(q[k]);
}

namespace {

SpectralDecomposition decompose_impl(SphereFunction const& f, int max_degree) {
  require_supported(f);
  if (max_degree < 0) throw std::invalid_argument("decompose: negative band limit");
  if (f.rule()->exactness_degree < 2 * max_degree + 2) {
    throw std::invalid_argument("decompose: quadrature exactness " +
                                std::to_string(f.rule()->exactness_degree) +
                                " < 2K+2 = " + std::to_string(2 * max_degree + 2));
  }
  SpectralDecomposition dec;
  dec.m = f.rule()->m;
  dec.max_degree = max_degree;
  dec.rule = f.rule();
  project_all(f, max_degree, max_degree - 1, dec.p, dec.q);
  dec.residual_norm = l2_norm(f - dec.sum());
  return dec;
}

}  // namespace

SpectralDecomposition decompose(SphereFunction const& f, int max_degree) {
  return decompose_impl(f, max_degree);
}

SpectralDecomposition fourier_circle(SphereFunction const& f, int max_degree) {
  require_supported(f);
  if (f.rule()->m != 1) throw std::invalid_argument("fourier_circle: needs m = 1");
  return decompose_impl(f, max_degree);
}

SpectralDecomposition heat_flow(SpectralDecomposition const& dec, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat_flow: t must be non-negative");
  SpectralDecomposition out = dec;
  for (std::size_t k = 0; k < out.p.size(); ++k) {
    out.p[k] *= component_multiplier(dec.m, t, Side::p, static_cast<int>(k));
  }
  for (std::size_t l = 0; l < out.q.size(); ++l) {
    out.q[l] *= component_multiplier(dec.m, t, Side::q, static_cast<int>(l));
  }
  return out;
}

void evaluate_components(SphereFunction const& f, int max_p, int max_q,
                         Vector1 const& direction, std::vector<Multivector>& p,
                         std::vector<Multivector>& q) {
  require_supported(f);
  if (std::abs(direction.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("evaluate_components: direction must be a unit vector");
  }
  KernelAccumulator const acc(f, std::max(max_p, 0), max_q);
  acc.run(direction, p, q);
}

Multivector evaluate_component(SphereFunction const& component, Side side, int index,
                               Vector1 const& direction) {
  require_supported(component);
  if (std::abs(direction.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("evaluate_component: direction must be a unit vector");
  }
  int const max_p = side == Side::p ? index : 0;
  int const max_q = side == Side::q ? index : -1;
  KernelAccumulator const acc(component, max_p, max_q);
  std::vector<Multivector> p;
  std::vector<Multivector> q;
  acc.run(direction, p, q);
  return side == Side::p ? p[index] : q[index];
}

nlohmann::json to_json(SpectralDecomposition const& dec) {
  nlohmann::json j;
  j["m"] = dec.m;
  j["K"] = dec.max_degree;
  j["residual_norm"] = dec.residual_norm;
  nlohmann::json comps = nlohmann::json::array();
  for (std::size_t k = 0; k < dec.p.size(); ++k) {
    comps.push_back({{"side", "P"}, {"index", k}, {"norm", l2_norm(dec.p[k])}});
  }
  for (std::size_t l = 0; l < dec.q.size(); ++l) {
    comps.push_back({{"side", "Q"}, {"index", l}, {"norm", l2_norm(dec.q[l])}});
  }
  j["components"] = std::move(comps);
  return j;
}

}  // namespace ccst
