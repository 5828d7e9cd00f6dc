// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ccst/gegenbauer.hpp"
#include "ccst/polynomial.hpp"
#include "ccst/spectral.hpp"
#include "ccst/transform.hpp"
#include "ccst/verify.hpp"
#include "ccst/zonal.hpp"
#include "oracle.hpp"

using namespace ccst;

namespace {

int g_failed = 0;

void report(int n, bool ok, std::string const& what, std::string const& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

std::string fmt(char const* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

SphereFunction sample(RulePtr const& rule, std::function<Multivector(Vector1 const&)> const& f) {
  return SphereFunction::sample(rule, f);
}

double gap(SphereFunction const& a, SphereFunction const& b) { return (a - b).max_abs(); }

void criterion_moments() {
  double numeric_err = 0.0;
  double trapezoid_err = 0.0;
  double analytic_err = 0.0;
  for (int m = 1; m <= 4; ++m) {
    for (double t : {0.25, 1.0, 2.0}) {
      MeasureParams const params{m, t};
      for (int k = 0; k <= 12; ++k) {
        double const target = t * k * (k + m - 1.0);
        for (double a : {2.0 * k + m + 1.0, -(2.0 * k + m - 3.0)}) {
          analytic_err =
              std::max(analytic_err, std::abs(radial_moment_log(params, a) - target) / (1.0 + target));
          numeric_err = std::max(numeric_err, std::abs(radial_moment_log_numeric(params, a) - target));
          trapezoid_err =
              std::max(trapezoid_err, std::abs(oracle::moment_log_trapezoid(m, t, a) - target));
        }
      }
    }
  }
  bool const ok = numeric_err <= 1e-8 && trapezoid_err <= 1e-8 && analytic_err <= 1e-14;
  report(1, ok, "moment constraints, m 1..4, t {0.25,1,2}, k 0..12, both systems",
         fmt("numeric %.2e, trapezoid %.2e, analytic rel %.2e; tol 1e-8", numeric_err,
             trapezoid_err, analytic_err));
}

struct IsometryRuns {
  std::vector<UnitarityReport> reports;
};

IsometryRuns criterion_isometry() {
  IsometryRuns runs;
  double worst = 0.0;
  double worst_mode = 0.0;
  bool all_pass = true;
  for (int m = 1; m <= 3; ++m) {
    for (double t : {0.5, 1.0}) {
      VerifyConfig c;
      c.m = m;
      c.t = t;
      c.max_degree = m == 1 ? 12 : 6;
      c.trials = 20;
      c.seed = 2024;
      c.threads = default_thread_count();
      UnitarityReport r = verify_unitarity(c);
      for (TrialResult const& tr : r.trials) {
        worst = std::max(worst, std::abs(tr.isometry_ratio - 1.0));
        worst_mode = std::max(worst_mode, tr.mode_isometry_error);
      }
      all_pass = all_pass && r.trials.size() == 20;
      runs.reports.push_back(std::move(r));
    }
  }
  report(2, all_pass && worst <= 1e-6 && worst_mode <= 1e-6,
         "isometry, m {1,2,3}, t {0.5,1}, K 6 (12 at m=1), 20 seeded inputs",
         fmt("max |ratio-1| %.2e, max per-mode %.2e; tol 1e-6", worst, worst_mode));
  return runs;
}

void criterion_monogenicity() {
  double symbolic = 0.0;
  double fd4 = 0.0;
  double fd2 = 0.0;
  std::mt19937_64 rng(3);
  for (int m = 1; m <= 3; ++m) {
    for (int k = 0; k <= 5; ++k) {
      std::vector<MvPolynomial> const& basis = monogenic_basis_cached(m, k);
      for (MvPolynomial const& b : basis) {
        symbolic = std::max(symbolic, dirac(b).max_abs_coefficient());
      }
      for (int i = 0; i < 100; ++i) {
        MvPolynomial const& b = basis[static_cast<std::size_t>(i) % basis.size()];
        PointEvaluator const image = inversion([&b](Vector1 const& x) { return b.evaluate(x); });
        Vector1 const x = random_point(m + 1, 0.5, 2.0, rng);
        fd4 = std::max(fd4, dirac_residual_fd(image, x, 5e-4, 4).max_abs());
        fd2 = std::max(fd2, dirac_residual_fd(image, x, 1e-4, 2).max_abs());
      }
    }
  }
  report(3, symbolic <= 1e-12 && fd4 <= 1e-6,
         "exact monogenicity of bases (m <= 3, k <= 5) and of inversion images at 100 points",
         fmt("symbolic %.2e (tol 1e-12); inversion FD 4th order h=5e-4 %.2e (tol 1e-6); "
             "2nd order h=1e-4 %.2e",
             symbolic, fd4, fd2));
}

void criterion_reproduction() {
  std::mt19937_64 rng(4);
  double reproduce = 0.0;
  double annihilate = 0.0;
  double rescale = 0.0;
  for (int m = 2; m <= 3; ++m) {
    for (int k = 0; k <= 5; ++k) {
      RulePtr const exact = build_quadrature(m, 2 * k + 2);
      RulePtr const wide = build_quadrature(m, 2 * k + 4);
      for (int trial = 0; trial < 3; ++trial) {
        oracle::NullMonogenic const p = oracle::random_monogenic(m, k, rng);
        auto const q = [&p](Vector1 const& x) { return oracle::q_side(p, x); };
        SphereFunction const sp = sample(exact, p);
        SphereFunction const sq = sample(exact, q);
        double const scale = std::max(sp.max_abs(), sq.max_abs());
        SphereFunction const pp = project_p(sp, k);
        SphereFunction const qq = project_q(sq, k);
        reproduce = std::max({reproduce, gap(pp, sp) / scale, gap(qq, sq) / scale});
        Complex const cp = l2_inner(pp, sp) / l2_inner(sp, sp);
        Complex const cq = l2_inner(qq, sq) / l2_inner(sq, sq);
        rescale = std::max({rescale, std::abs(cp - 1.0), std::abs(cq - 1.0)});
        annihilate = std::max({annihilate, project_q(sp, k).max_abs() / scale,
                               project_p(sq, k).max_abs() / scale});
        SphereFunction const wp = sample(wide, p);
        SphereFunction const wq = sample(wide, q);
        annihilate = std::max({annihilate, project_p(wp, k + 1).max_abs() / scale,
                               project_q(wq, k + 1).max_abs() / scale});
        if (k > 0) {
          annihilate = std::max({annihilate, project_p(wp, k - 1).max_abs() / scale,
                                 project_q(wq, k - 1).max_abs() / scale,
                                 project_q(wp, k - 1).max_abs() / scale});
        }
      }
    }
  }
  report(4, reproduce <= 1e-8 && annihilate <= 1e-8 && rescale <= 1e-8,
         "kernel reproduction of oracle monogenics, m {2,3}, k <= 5, exactness 2k+2",
         fmt("reproduction %.2e, annihilation %.2e, |rescale-1| %.2e; tol 1e-8", reproduce,
             annihilate, rescale));
}

void criterion_eigenstructure() {
  double gamma_err = 0.0;
  double laplace_err = 0.0;
  std::mt19937_64 rng(5);
  for (int m = 1; m <= 3; ++m) {
    std::vector<Vector1> points;
    for (int i = 0; i < 8; ++i) points.push_back(oracle::random_unit(m + 1, rng));
    for (int k = 0; k <= 5; ++k) {
      for (MvPolynomial const& b : monogenic_basis_cached(m, k)) {
        MvPolynomial const xb = b.vector_variable_times();
        double const nb = std::max(1.0, b.max_abs_coefficient());
        double const nx = std::max(1.0, xb.max_abs_coefficient());
        gamma_err = std::max(gamma_err, distance(gamma(b), Complex(-k) * b) / nb);
        gamma_err = std::max(gamma_err, distance(gamma(xb), Complex(k + m) * xb) / nx);
        for (auto const* f : {&b, &xb}) {
          MvPolynomial const g = gamma(*f);
          MvPolynomial const factored = Complex(m - 1.0) * g - gamma(g);
          double const n = std::max(1.0, f->max_abs_coefficient());
          MvPolynomial const lap = spherical_laplacian(*f);
          // Equal as functions on the sphere; the polynomials differ by |x|² factors.
          for (Vector1 const& x : points) {
            laplace_err = std::max(laplace_err, distance(lap.evaluate(x), factored.evaluate(x)) / n);
          }
        }
      }
    }
  }
  report(5, gamma_err <= 1e-10 && laplace_err <= 1e-10,
         "Gamma eigenvalues -k and k+m, spherical Laplacian = ((m-1) - Gamma) Gamma, k <= 5",
         fmt("eigenvalue %.2e, factorization %.2e; tol 1e-10", gamma_err, laplace_err));
}

void criterion_factorization() {
  int const m = 2;
  double const t = 1.0;
  int const K = 6;
  std::mt19937_64 rng(trial_seed(6, 0));
  RulePtr const rule = build_quadrature(m, 2 * K + 4);
  SphereFunction const f = random_band_limited(rule, K, rng);
  LaurentMonogenic const image = cst_forward(f, t, K);
  KernelTruncation const trunc = plan_truncation(m, t, 1e-12, 0.5, 2.0);
  RulePtr const fine = build_quadrature(
      m, std::min(kMaxQuadratureDegree, std::max(2 * K + 4, trunc.max_degree + K)));
  std::mt19937_64 same(trial_seed(6, 0));
  SphereFunction const f_fine = random_band_limited(fine, K, same);
  std::mt19937_64 points(7);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Vector1 const x = random_point(m + 1, 0.5, 2.0, points);
    worst = std::max(worst, distance(evaluate_laurent(image, x), cst_direct(f_fine, t, trunc, x)));
  }
  report(6, worst <= 1e-7, "cst_forward vs direct CK heat kernel quadrature, m=2, t=1, K=6, 50 points",
         fmt("max abs error %.2e (input norm %.3g, kernel degree %.0f); tol 1e-7", worst, l2_norm(f),
             trunc.max_degree));
}

void criterion_roundtrip(IsometryRuns const& runs) {
  double worst = 0.0;
  int count = 0;
  std::vector<UnitarityReport> more;
  for (double t : {0.5, 1.0}) {
    VerifyConfig c;
    c.m = 1;
    c.t = t;
    c.max_degree = 6;
    c.trials = 20;
    c.seed = 77;
    c.threads = default_thread_count();
    more.push_back(verify_unitarity(c));
  }
  std::vector<UnitarityReport> const& extra = more;
  for (std::vector<UnitarityReport> const* list : {&runs.reports, &extra}) {
    for (UnitarityReport const& r : *list) {
      for (TrialResult const& tr : r.trials) {
        if (!tr.roundtrip_error) continue;
        worst = std::max(worst, *tr.roundtrip_error);
        ++count;
      }
    }
  }
  report(7, count > 0 && worst <= 1e-7, "roundtrip cst_inverse o cst_forward within the cap",
         fmt("max relative L2 error %.2e over %.0f inputs; tol 1e-7", worst, count));
}

void criterion_bounds() {
  std::mt19937_64 rng(8);
  double margin = -1e300;
  for (int m = 2; m <= 3; ++m) {
    for (int pair = 0; pair < 500; ++pair) {
      Vector1 const eta = oracle::random_unit(m + 1, rng);
      Vector1 const xi = oracle::random_unit(m + 1, rng);
      for (int k = 0; k <= 20; ++k) {
        double const plus = czplus(m, k, eta, xi).max_abs();
        margin = std::max(margin, std::log(plus + 1e-300) - kernel_bound_log(k, m, KernelSide::plus));
        if (k >= 1) {
          double const minus = czminus(m, k - 1, eta, xi).max_abs();
          margin =
              std::max(margin, std::log(minus + 1e-300) - kernel_bound_log(k, m, KernelSide::minus));
        }
      }
    }
  }
  report(8, margin <= 0.0, "sampled kernel coefficients under the factorial bounds, k <= 20, 500 pairs",
         fmt("max log(|C|) - log(bound) = %.3f; must be <= 0", margin));
}

void criterion_concentration() {
  MeasureParams const params{2, 0.01};
  double const mass = measure_mass_outside(params, 0.5);
  // Independent check: trapezoid sum of ρ(y) e^{(m+1)y} over |y| > 0.5.
  double const h = 1e-5;
  long double outside = 0.0L;
  long double total = 0.0L;
  for (double y = -3.0; y <= 3.0; y += h) {
    double const w = rho_density(params, y) * std::exp(3.0 * y) * h;
    total += w;
    if (std::abs(y) > 0.5) outside += w;
  }
  double const numeric = static_cast<double>(outside / total);
  report(9, mass <= 1e-3 && numeric <= 1e-3, "concentration, t=0.01, m=2, mass of |log r| > 0.5",
         fmt("mass %.3e (numeric %.3e, total %.12f); tol 1e-3", mass, numeric,
             static_cast<double>(total)));
}

void criterion_circle() {
  double multiplier_err = 0.0;
  double density_err = 0.0;
  double mode_err = 0.0;
  double direct_err = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    for (int k = 0; k <= 12; ++k) {
      multiplier_err = std::max(
          multiplier_err, std::abs(component_multiplier(1, t, Side::p, k) - std::exp(-t * k * k / 2.0)));
      multiplier_err =
          std::max(multiplier_err, std::abs(component_multiplier(1, t, Side::q, k) -
                                            std::exp(-t * (k + 1.0) * (k + 1.0) / 2.0)));
    }
    for (double y = -3.0; y <= 3.0; y += 0.25) {
      double const unit = std::exp(-y * y / t - 2.0 * y) / std::sqrt(t * std::numbers::pi);
      density_err = std::max(density_err, std::abs(rho_density({1, t}, y) - unit) / unit);
    }
    int const K = 12;
    std::mt19937_64 rng(trial_seed(10, static_cast<int>(t * 100)));
    RulePtr const rule = build_quadrature(1, 2 * K + 4);
    SphereFunction const f = random_band_limited(rule, K, rng);
    SpectralDecomposition const dec = fourier_circle(f, K);
    LaurentMonogenic const image = cst_forward(f, t, K);
    MeasureParams const params{1, t};
    auto check_mode = [&](SphereFunction const& before, SphereFunction const& after, double a) {
      double const n = l2_norm(before);
      if (n < 1e-12) return;
      double const out = l2_norm(after) * std::exp(radial_moment_log_numeric(params, a) / 2.0);
      mode_err = std::max(mode_err, std::abs(out / n - 1.0));
    };
    for (int k = 0; k <= K; ++k) check_mode(dec.p[k], image.p[k], p_moment_exponent(1, k));
    for (int l = 0; l < K; ++l) check_mode(dec.q[l], image.q[l], q_moment_exponent(1, l));
    KernelTruncation const trunc = plan_truncation(1, t, 1e-12, 0.5, 2.0);
    RulePtr const fine =
        build_quadrature(1, std::min(kMaxQuadratureDegree, std::max(2 * K + 4, trunc.max_degree + K)));
    std::mt19937_64 same(trial_seed(10, static_cast<int>(t * 100)));
    SphereFunction const f_fine = random_band_limited(fine, K, same);
    std::mt19937_64 points(11);
    for (int i = 0; i < 10; ++i) {
      Vector1 const x = random_point(2, 0.5, 2.0, points);
      direct_err = std::max(direct_err, distance(evaluate_laurent(image, x),
                                                 cst_direct(f_fine, t, trunc, x)) /
                                            l2_norm(f));
    }
  }
  report(10, multiplier_err <= 1e-15 && density_err <= 1e-14 && mode_err <= 1e-10,
         "m=1 reduction: multipliers e^{-tk^2/2}, unit-prefactor density, per-mode isometry",
         fmt("multiplier %.2e, density rel %.2e, per-mode isometry %.2e (tol 1e-10)", multiplier_err,
             density_err, mode_err) +
             fmt("; circle kernel vs factorized %.2e", direct_err));
}

}  // namespace

int main() {
  auto const start = std::chrono::steady_clock::now();
  criterion_moments();
  IsometryRuns const runs = criterion_isometry();
  criterion_monogenicity();
  criterion_reproduction();
  criterion_eigenstructure();
  criterion_factorization();
  criterion_roundtrip(runs);
  criterion_bounds();
  criterion_concentration();
  criterion_circle();
  double const seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 10 criteria failed (%.1f s)\n", g_failed, seconds);
  return g_failed == 0 ? 0 : 1;
}
