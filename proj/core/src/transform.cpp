#include "ccst/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ccst {

namespace {

void require_window(LaurentMonogenic const& f, double r) {
  if (r == 0.0) throw std::domain_error("Laurent evaluation at the origin");
  if (r < f.r_min * (1.0 - 1e-12) || r > f.r_max * (1.0 + 1e-12)) {
    throw std::domain_error("radius " + std::to_string(r) + " outside window [" +
                            std::to_string(f.r_min) + ", " + std::to_string(f.r_max) + "]");
  }
}

void require_positive_t(double t, char const* what) {
  if (!(t > 0.0)) throw std::invalid_argument(std::string(what) + ": t must be positive");
}

double rho_log_density(MeasureParams const& params, double y) {
  double const t = params.t;
  double const m = params.m;
  return -t * (m - 1.0) * (m - 1.0) / 4.0 - 0.5 * std::log(t * std::numbers::pi) -
         y * y / t - 2.0 * y;
}

std::ptrdiff_t find_node(QuadratureRule const& rule, Vector1 const& direction) {
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double d = 0.0;
    for (int j = 0; j <= rule.m; ++j) d = std::max(d, std::abs(rule.nodes[i][j] - direction[j]));
    if (d < 1e-13) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

}  // namespace

LaurentMonogenic ck_extend(SpectralDecomposition const& dec, double r_min, double r_max) {
  if (!(r_min > 0.0) || !(r_max >= r_min)) {
    throw std::invalid_argument("ck_extend: bad radial window");
  }
  LaurentMonogenic f;
  f.m = dec.m;
  f.max_degree = dec.max_degree;
  f.rule = dec.rule;
  f.p = dec.p;
  f.q = dec.q;
  f.r_min = r_min;
  f.r_max = r_max;
  return f;
}

Multivector evaluate_laurent(LaurentMonogenic const& f, Vector1 const& x) {
  double const r = x.norm();
  require_window(f, r);
  Vector1 const direction = (1.0 / r) * x;
  std::ptrdiff_t const node = find_node(*f.rule, direction);
  Multivector out(f.m + 1);
  std::vector<Multivector> pv;
  std::vector<Multivector> qv;
  if (node >= 0) {
    for (SphereFunction const& c : f.p) pv.push_back(c[node]);
    for (SphereFunction const& c : f.q) qv.push_back(c[node]);
  } else {
    // Each stored component lies in its own eigenspace, so projecting the sum
    // recovers all of them at once.
    evaluate_components(restrict_to_sphere(f), static_cast<int>(f.p.size()) - 1,
                        static_cast<int>(f.q.size()) - 1, direction, pv, qv);
  }
  for (std::size_t k = 0; k < f.p.size(); ++k) {
    out.add_scaled(pv[k], std::pow(r, static_cast<double>(k)));
  }
  for (std::size_t l = 0; l < f.q.size(); ++l) {
    out.add_scaled(qv[l], std::pow(r, -static_cast<double>(l + f.m)));
  }
  return out;
}

SphereFunction restrict_to_sphere(LaurentMonogenic const& f) {
  SphereFunction total(f.rule);
  for (SphereFunction const& c : f.p) total += c;
  for (SphereFunction const& c : f.q) total += c;
  return total;
}

double rho_density(MeasureParams const& params, double y) {
  require_positive_t(params.t, "rho_density");
  return std::exp(rho_log_density(params, y));
}

double radial_moment_log(MeasureParams const& params, double a) {
  require_positive_t(params.t, "radial_moment_log");
  double const t = params.t;
  double const m = params.m;
  return -t * (m - 1.0) * (m - 1.0) / 4.0 + t * (a - 2.0) * (a - 2.0) / 4.0;
}

double radial_moment_log_numeric(MeasureParams const& params, double a, double y_min,
                                 double y_max, int panels) {
  require_positive_t(params.t, "radial_moment_log_numeric");
  if (!(y_max > y_min) || panels < 1) {
    throw std::invalid_argument("radial_moment_log_numeric: bad grid");
  }
  std::vector<double> gl_nodes;
  std::vector<double> gl_weights;
  gauss_jacobi_symmetric(10, 0.0, gl_nodes, gl_weights);  // weights sum to 1
  double const width = (y_max - y_min) / panels;

  std::vector<double> logs;
  std::vector<double> weights;
  logs.reserve(static_cast<std::size_t>(panels) * gl_nodes.size());
  weights.reserve(logs.capacity());
  double peak = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < panels; ++p) {
    double const centre = y_min + (p + 0.5) * width;
    for (std::size_t i = 0; i < gl_nodes.size(); ++i) {
      double const y = centre + 0.5 * width * gl_nodes[i];
      double const value = rho_log_density(params, y) + a * y;
      logs.push_back(value);
      weights.push_back(width * gl_weights[i]);
      peak = std::max(peak, value);
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) sum += weights[i] * std::exp(logs[i] - peak);
  return peak + std::log(sum);
}

double p_moment_exponent(int m, int k) { return 2.0 * k + m + 1.0; }

double q_moment_exponent(int m, int l) { return -(2.0 * l + m - 1.0); }

double ml2_norm(LaurentMonogenic const& f, MeasureParams const& params) {
  if (params.m != f.m) throw std::invalid_argument("ml2_norm: mismatched m");
  double sum = 0.0;
  for (std::size_t k = 0; k < f.p.size(); ++k) {
    double const n = l2_norm(f.p[k]);
    if (n == 0.0) continue;
    sum += std::exp(radial_moment_log(params, p_moment_exponent(f.m, static_cast<int>(k)))) * n * n;
  }
  for (std::size_t l = 0; l < f.q.size(); ++l) {
    double const n = l2_norm(f.q[l]);
    if (n == 0.0) continue;
    sum += std::exp(radial_moment_log(params, q_moment_exponent(f.m, static_cast<int>(l)))) * n * n;
  }
  return std::sqrt(sum);
}

double measure_mass_outside(MeasureParams const& params, double half_width) {
  require_positive_t(params.t, "measure_mass_outside");
  // Under μ_t, y = log r is normal with mean t(m-1)/2 and variance t/2.
  double const mean = params.t * (params.m - 1.0) / 2.0;
  double const scale = std::sqrt(params.t);
  return 0.5 * std::erfc((half_width - mean) / scale) +
         0.5 * std::erfc((half_width + mean) / scale);
}

LaurentMonogenic cst_forward(SphereFunction const& f, double t, int max_degree) {
  require_positive_t(t, "cst_forward");
  LaurentMonogenic out = ck_extend(heat_flow(decompose(f, max_degree), t));
  out.t = t;
  return out;
}

double inverse_amplification_log(int m, double t, int max_degree) {
  // The largest harmonic degree present is K (p_K and q_{K-1}).
  return t * max_degree * (max_degree + m - 1.0) / 2.0;
}

SphereFunction cst_inverse(LaurentMonogenic const& f, double t) {
  require_positive_t(t, "cst_inverse");
  double const worst = inverse_amplification_log(f.m, t, f.max_degree);
  if (worst > std::log(kAmplificationCap)) {
    throw AmplificationError("inverse heat multiplier e^" + std::to_string(worst) +
                             " exceeds the amplification cap 1e12");
  }
  SphereFunction out(f.rule);
  for (std::size_t k = 0; k < f.p.size(); ++k) {
    SphereFunction c = f.p[k];
    c *= 1.0 / component_multiplier(f.m, t, Side::p, static_cast<int>(k));
    out += c;
  }
  for (std::size_t l = 0; l < f.q.size(); ++l) {
    SphereFunction c = f.q[l];
    c *= 1.0 / component_multiplier(f.m, t, Side::q, static_cast<int>(l));
    out += c;
  }
  return out;
}

Multivector circle_ck_heat_kernel(double t, int max_mode, Vector1 const& x,
                                  Vector1 const& xi) {
  require_positive_t(t, "circle_ck_heat_kernel");
  if (x.dimension() != 2 || xi.dimension() != 2) {
    throw std::invalid_argument("circle_ck_heat_kernel: needs points of R^2");
  }
  double const r = x.norm();
  if (r == 0.0) throw std::domain_error("circle_ck_heat_kernel: origin");
  double const delta = std::atan2(x[1] * xi[0] - x[0] * xi[1], x[0] * xi[0] + x[1] * xi[1]);
  double const log_r = std::log(r);
  Multivector out(2);
  for (int n = -max_mode; n <= max_mode; ++n) {
    double const c = std::exp(-t * n * n / 2.0 + n * log_r);
    out[0] += c * std::cos(n * delta);
    out[0b11] -= c * std::sin(n * delta);
  }
  return out;
}

Multivector cst_direct(SphereFunction const& f, double t, KernelTruncation const& trunc,
                       Vector1 const& x) {
  require_positive_t(t, "cst_direct");
  QuadratureRule const& rule = *f.rule();
  Multivector out(rule.m + 1);
  if (rule.m == 1) {
    double const r = x.norm();
    if (r < trunc.r_min * (1.0 - 1e-12) || r > trunc.r_max * (1.0 + 1e-12)) {
      throw std::domain_error("cst_direct: radius outside the truncation window");
    }
  }
  for (std::size_t j = 0; j < rule.size(); ++j) {
    Multivector const kernel = rule.m == 1
                                   ? circle_ck_heat_kernel(t, trunc.max_degree, x, rule.nodes[j])
                                   : ck_heat_kernel(rule.m, t, trunc, x, rule.nodes[j]);
    out.add_scaled(kernel * f[j], rule.weights[j]);
  }
  return out;
}

nlohmann::json to_json(LaurentMonogenic const& f, bool include_values) {
  nlohmann::json j;
  j["m"] = f.m;
  j["K"] = f.max_degree;
  j["t"] = f.t;
  j["window"] = {f.r_min, f.r_max};
  j["quadrature_degree"] = f.rule->exactness_degree;
  nlohmann::json comps = nlohmann::json::array();
  auto emit = [&](SphereFunction const& c, Side side, int index) {
    nlohmann::json e;
    e["side"] = side == Side::p ? "P" : "Q";
    e["index"] = index;
    e["radial_power"] = side == Side::p ? index : -(index + f.m);
    e["gamma_eigenvalue"] = gamma_eigenvalue(f.m, side, index);
    e["heat_multiplier"] = component_multiplier(f.m, f.t, side, index);
    e["norm"] = l2_norm(c);
    if (include_values) {
      nlohmann::json values = nlohmann::json::array();
      for (Multivector const& v : c.values()) values.push_back(to_json(v));
      e["values"] = std::move(values);
    }
    comps.push_back(std::move(e));
  };
  for (std::size_t k = 0; k < f.p.size(); ++k) emit(f.p[k], Side::p, static_cast<int>(k));
  for (std::size_t l = 0; l < f.q.size(); ++l) emit(f.q[l], Side::q, static_cast<int>(l));
  j["components"] = std::move(comps);
  return j;
}

}  // namespace ccst
