#include "ccst/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace ccst {

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SphereFunction random_band_limited(RulePtr const& rule, int max_degree,
                                   std::mt19937_64& rng) {
  int const n = rule->generators();
  std::normal_distribution<double> normal;
  MvPolynomial poly(n);
  Exponents e(n, 0);
  // Odometer over all exponent vectors with |α| <= K.
  while (true) {
    int total = 0;
    for (int a : e) total += a;
    if (total <= max_degree) {
      Multivector c(n);
      for (Blade b = 0; b < c.size(); ++b) c[b] = Complex(normal(rng), normal(rng));
      poly.add_term(e, c);
    }
    int i = 0;
    while (i < n && ++e[i] > max_degree) e[i++] = 0;
    if (i == n) break;
  }
  return SphereFunction::sample(rule, [&](Vector1 const& x) { return poly.evaluate(x); });
}

Vector1 random_unit_vector(int generators, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  while (true) {
    std::vector<double> x(generators);
    for (double& v : x) v = normal(rng);
    Vector1 v(std::move(x));
    if (v.norm() > 1e-8) return v.normalized();
  }
}

Vector1 random_point(int generators, double r_lo, double r_hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(r_lo, r_hi);
  double const r = radius(rng);
  return r * random_unit_vector(generators, rng);
}

unsigned default_thread_count() {
  if (char const* env = std::getenv("CCST_THREADS")) {
    int const n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

TrialResult run_trial(VerifyConfig const& config, RulePtr const& rule, int index) {
  TrialResult result;
  result.index = index;
  result.seed = trial_seed(config.seed, index);
  std::mt19937_64 rng(result.seed);

  SphereFunction const f = random_band_limited(rule, config.max_degree, rng);
  result.input_norm = l2_norm(f);
  MeasureParams const params{config.m, config.t};

  SpectralDecomposition const dec = decompose(f, config.max_degree);
  LaurentMonogenic image = ck_extend(heat_flow(dec, config.t));
  image.t = config.t;
  result.isometry_ratio = ml2_norm(image, params) / result.input_norm;
  result.band_residual = dec.residual_norm / result.input_norm;

  // Per-mode isometry: push each component through the transform alone.
  auto mode_error = [&](SphereFunction const& component, Side side, int index) {
    double const n = l2_norm(component);
    if (n <= 1e-12 * result.input_norm) return 0.0;
    LaurentMonogenic single;
    single.m = config.m;
    single.max_degree = config.max_degree;
    single.rule = rule;
    single.t = config.t;
    SphereFunction scaled = component;
    scaled *= component_multiplier(config.m, config.t, side, index);
    (side == Side::p ? single.p : single.q).push_back(std::move(scaled));
    // Place the component at its index so ml2_norm sees the right mode.
    auto& slot = side == Side::p ? single.p : single.q;
    std::vector<SphereFunction> placed(static_cast<std::size_t>(index) + 1, SphereFunction(rule));
    placed[index] = slot.back();
    slot = std::move(placed);
    return std::abs(ml2_norm(single, params) / n - 1.0);
  };
  for (std::size_t k = 0; k < dec.p.size(); ++k) {
    result.mode_isometry_error = std::max(result.mode_isometry_error,
                                          mode_error(dec.p[k], Side::p, static_cast<int>(k)));
  }
  for (std::size_t l = 0; l < dec.q.size(); ++l) {
    result.mode_isometry_error = std::max(result.mode_isometry_error,
                                          mode_error(dec.q[l], Side::q, static_cast<int>(l)));
  }

  if (inverse_amplification_log(config.m, config.t, config.max_degree) <=
      std::log(kAmplificationCap)) {
    SphereFunction const back = cst_inverse(image, config.t);
    result.roundtrip_error = l2_norm(back - f) / result.input_norm;
  }

  // Monogenicity of the image by central differences, relative to ‖f‖.
  PointEvaluator const evaluator = [&image](Vector1 const& x) {
    return evaluate_laurent(image, x);
  };
  for (int i = 0; i < config.fd_points; ++i) {
    Vector1 const x = random_point(config.m + 1, 0.5, 2.0, rng);
    double const res =
        dirac_residual_fd(evaluator, x, config.tol.fd_step).max_abs() / result.input_norm;
    result.dirac_residual = std::max(result.dirac_residual, res);
  }
  return result;
}

void check(UnitarityReport& report, bool ok, std::string const& what) {
  if (!ok) report.failures.push_back(what);
}

}  // namespace

UnitarityReport verify_unitarity(VerifyConfig const& config) {
  if (config.m < 1 || config.m > 4) throw std::invalid_argument("verify: m must be in 1..4");
  if (!(config.t > 0.0)) throw std::invalid_argument("verify: t must be positive");
  if (config.max_degree < 0) throw std::invalid_argument("verify: K must be non-negative");
  if (config.trials < 0) throw std::invalid_argument("verify: trials must be non-negative");

  UnitarityReport report;
  report.config = config;
  int const degree =
      config.quadrature_degree > 0 ? config.quadrature_degree : 2 * config.max_degree + 4;
  report.config.quadrature_degree = degree;
  RulePtr const rule = build_quadrature(config.m, degree);

  report.trials.resize(config.trials);
  std::atomic<int> next{0};
  unsigned const workers =
      std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.trials)));
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i = next++; i < config.trials; i = next++) {
            report.trials[i] = run_trial(report.config, rule, i);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto const& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  MeasureParams const params{config.m, config.t};
  int const kmax = std::max(config.constraint_degree, config.max_degree);
  for (int k = 0; k <= kmax; ++k) {
    double const target = config.t * k * (k + config.m - 1.0);
    double const a_p = 2.0 * k + config.m + 1.0;
    double const a_q = -(2.0 * k + config.m - 3.0);
    report.constraints.push_back({k, 'P', target, radial_moment_log(params, a_p),
                                  radial_moment_log_numeric(params, a_p)});
    report.constraints.push_back({k, 'Q', target, radial_moment_log(params, a_q),
                                  radial_moment_log_numeric(params, a_q)});
  }

  if (config.trials > 0) {
    std::mt19937_64 rng(trial_seed(config.seed, 0));
    SphereFunction const f = random_band_limited(rule, config.max_degree, rng);
    LaurentMonogenic const image = cst_forward(f, config.t, config.max_degree);
    KernelTruncation const trunc = plan_truncation(config.m, config.t, 1e-12, 0.5, 2.0);
    // The kernel sum has degree trunc.max_degree; a rule exact only to 2K+4
    // aliases its high modes onto f at small t.
    int const fine_degree = std::min(
        kMaxQuadratureDegree, std::max(rule->exactness_degree, trunc.max_degree + config.max_degree));
    std::mt19937_64 same(trial_seed(config.seed, 0));
    SphereFunction const f_fine =
        random_band_limited(build_quadrature(config.m, fine_degree), config.max_degree, same);
    std::mt19937_64 points(trial_seed(config.seed, -1));
    double const norm = l2_norm(f);
    for (int i = 0; i < 4; ++i) {
      Vector1 const x = random_point(config.m + 1, 0.5, 2.0, points);
      double const err =
          distance(evaluate_laurent(image, x), cst_direct(f_fine, config.t, trunc, x));
      report.direct_quadrature_error = std::max(report.direct_quadrature_error, err / norm);
    }
  }
  report.concentration_mass = measure_mass_outside(params, 0.5);

  Tolerances const& tol = config.tol;
  for (TrialResult const& r : report.trials) {
    std::string const tag = "trial " + std::to_string(r.index) + ": ";
    check(report, std::abs(r.isometry_ratio - 1.0) <= tol.isometry, tag + "isometry");
    check(report, r.mode_isometry_error <= tol.isometry, tag + "per-mode isometry");
    check(report, r.band_residual <= tol.residual, tag + "band-limit residual");
    check(report, r.dirac_residual <= tol.dirac_fd, tag + "Dirac residual");
    if (r.roundtrip_error) {
      check(report, *r.roundtrip_error <= tol.roundtrip, tag + "roundtrip");
    } else {
      report.roundtrip_skipped = true;
    }
  }
  for (ConstraintResult const& c : report.constraints) {
    std::string const tag =
        std::string("constraint ") + c.system + " k=" + std::to_string(c.k) + ": ";
    check(report, std::abs(c.analytic_log - c.target_log) <= tol.residual, tag + "analytic");
    check(report, std::abs(c.numeric_log - c.target_log) <= tol.residual, tag + "numeric");
  }
  check(report, report.direct_quadrature_error <= 1e-7, "direct kernel quadrature");
  report.pass = report.failures.empty();
  return report;
}

nlohmann::json to_json(UnitarityReport const& report) {
  nlohmann::json j;
  VerifyConfig const& c = report.config;
  j["m"] = c.m;
  j["t"] = c.t;
  j["K"] = c.max_degree;
  j["seed"] = c.seed;
  j["quadrature_degree"] = c.quadrature_degree;
  j["tolerances"] = {{"isometry", c.tol.isometry},
                     {"residual", c.tol.residual},
                     {"dirac_fd", c.tol.dirac_fd},
                     {"fd_step", c.tol.fd_step},
                     {"roundtrip", c.tol.roundtrip}};
  nlohmann::json trials = nlohmann::json::array();
  for (TrialResult const& r : report.trials) {
    nlohmann::json e{{"index", r.index},
                     {"seed", r.seed},
                     {"input_norm", r.input_norm},
                     {"isometry_ratio", r.isometry_ratio},
                     {"mode_isometry_error", r.mode_isometry_error},
                     {"band_residual", r.band_residual},
                     {"dirac_residual", r.dirac_residual}};
    e["roundtrip_error"] = r.roundtrip_error ? nlohmann::json(*r.roundtrip_error) : nlohmann::json();
    trials.push_back(std::move(e));
  }
  j["trials"] = std::move(trials);
  nlohmann::json constraints = nlohmann::json::array();
  for (ConstraintResult const& r : report.constraints) {
    constraints.push_back({{"k", r.k},
                           {"system", std::string(1, r.system)},
                           {"target_log", r.target_log},
                           {"analytic_log", r.analytic_log},
                           {"numeric_log", r.numeric_log}});
  }
  j["constraints"] = std::move(constraints);
  j["direct_quadrature_error"] = report.direct_quadrature_error;
  j["concentration_mass_outside_half"] = report.concentration_mass;
  j["roundtrip_skipped"] = report.roundtrip_skipped;
  j["failures"] = report.failures;
  j["pass"] = report.pass;
  return j;
}

}  // namespace ccst
