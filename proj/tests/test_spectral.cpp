#include <doctest.h>

#include <cmath>
#include <random>

#include "ccst/polynomial.hpp"
#include "ccst/spectral.hpp"
#include "ccst/zonal.hpp"
#include "oracle.hpp"

using namespace ccst;

namespace {

SphereFunction sample(RulePtr const& rule, MvPolynomial const& p) {
  return SphereFunction::sample(rule, [&](Vector1 const& x) { return p.evaluate(x); });
}

double gap(SphereFunction const& a, SphereFunction const& b) { return (a - b).max_abs(); }

// Random combination of P-side degree k basis elements and their x̲-images.
MvPolynomial random_piece(int m, int k, bool q_side, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  MvPolynomial out(m + 1);
  for (MvPolynomial const& b : monogenic_basis_cached(m, k)) {
    MvPolynomial const term = q_side ? b.vector_variable_times() : b;
    out += term.times_right(Multivector::scalar(m + 1, Complex(normal(rng), normal(rng))));
  }
  return out;
}

}  // namespace

TEST_CASE("projection examples") {
  std::mt19937_64 rng(79);
  for (int m = 1; m <= 3; ++m) {
    RulePtr const rule = build_quadrature(m, 12);
    SphereFunction const f = SphereFunction::sample(rule, [&](Vector1 const& x) {
      return Multivector::scalar(m + 1, 1.0 + x[0] * x[1]) + Multivector::blade(m + 1, 0b1, x[m]);
    });
    SphereFunction const p0 = project_p(f, 0);
    for (Multivector const& v : p0.values()) CHECK(distance(v, integrate(f)) <= 1e-12);

    SphereFunction const one = SphereFunction::sample(
        rule, [m](Vector1 const&) { return Multivector::scalar(m + 1, 1.0); });
    for (int k = 0; k <= 4; ++k) CHECK(project_q(one, k).max_abs() <= 1e-12);

    for (MvPolynomial const& b : monogenic_basis_cached(m, 1)) {
      SphereFunction const g = sample(rule, b);
      CHECK(gap(project_p(g, 1), g) <= 1e-8);
      CHECK(project_q(g, 1).max_abs() <= 1e-8);
    }
    for (int k = 0; k <= 3; ++k) {
      SphereFunction const q = sample(rule, random_piece(m, k, true, rng));
      CHECK(gap(project_q(q, k), q) <= 1e-8 * std::max(1.0, q.max_abs()));
      CHECK(project_p(q, k).max_abs() <= 1e-8 * std::max(1.0, q.max_abs()));
      SphereFunction const mixed = q + sample(rule, random_piece(m, k + 1, false, rng));
      SphereFunction const once = project_q(mixed, k);
      CHECK(gap(project_q(once, k), once) <= 1e-8 * std::max(1.0, once.max_abs()));
    }
  }
}

TEST_CASE("decomposition recovers band-limited pieces") {
  std::mt19937_64 rng(83);
  for (int m = 1; m <= 3; ++m) {
    int const K = 4;
    RulePtr const rule = build_quadrature(m, 2 * K + 4);
    SpectralDecomposition const trivial = decompose(
        SphereFunction::sample(rule, [m](Vector1 const&) { return Multivector::scalar(m + 1, 1.0); }),
        K);
    CHECK(trivial.residual_norm <= 1e-12);
    CHECK(l2_norm(trivial.p[0]) == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k <= K; ++k) CHECK(trivial.p[k].max_abs() <= 1e-12);
    for (int k = 0; k < K; ++k) CHECK(trivial.q[k].max_abs() <= 1e-12);

    std::vector<SphereFunction> p_parts;
    std::vector<SphereFunction> q_parts;
    SphereFunction total(rule);
    for (int k = 0; k <= K; ++k) {
      p_parts.push_back(sample(rule, random_piece(m, k, false, rng)));
      total += p_parts.back();
      if (k < K) {
        q_parts.push_back(sample(rule, random_piece(m, k, true, rng)));
        total += q_parts.back();
      }
    }
    SpectralDecomposition const dec = decompose(total, K);
    double const scale = total.max_abs();
    CHECK(dec.residual_norm <= 1e-8 * scale);
    CHECK(gap(dec.sum(), total) <= 1e-8 * scale);
    double energy = 0.0;
    for (int k = 0; k <= K; ++k) {
      CHECK(gap(dec.p[k], p_parts[k]) <= 1e-8 * scale);
      energy += std::pow(l2_norm(dec.p[k]), 2);
    }
    for (int k = 0; k < K; ++k) {
      CHECK(gap(dec.q[k], q_parts[k]) <= 1e-8 * scale);
      energy += std::pow(l2_norm(dec.q[k]), 2);
    }
    double const norm2 = std::pow(l2_norm(total), 2);
    CHECK(std::abs(energy - norm2) <= 1e-8 * norm2);

    // Distinct components are orthogonal.
    std::vector<SphereFunction const*> all;
    for (auto const& c : dec.p) all.push_back(&c);
    for (auto const& c : dec.q) all.push_back(&c);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        CHECK(std::abs(l2_inner(*all[i], *all[j])) <= 1e-8 * norm2);
      }
    }
  }
}

TEST_CASE("gamma eigenvalues on decomposed components") {
  std::mt19937_64 rng(89);
  for (int m = 1; m <= 3; ++m) {
    int const K = 3;
    RulePtr const rule = build_quadrature(m, 2 * K + 4);
    MvPolynomial total(m + 1);
    for (int k = 0; k <= K; ++k) total += random_piece(m, k, false, rng);
    for (int k = 0; k < K; ++k) total += random_piece(m, k, true, rng);
    SpectralDecomposition const dec = decompose(sample(rule, total), K);
    // Γ is symmetric, so ⟨Γf, p_k⟩ = ⟨f, Γp_k⟩ = -k ‖p_k‖².
    SphereFunction const gf = sample(rule, gamma(total));
    for (int k = 0; k <= K; ++k) {
      double const n2 = std::pow(l2_norm(dec.p[k]), 2);
      CHECK(std::abs(l2_inner(gf, dec.p[k]) - Complex(gamma_eigenvalue(m, Side::p, k) * n2)) <=
            1e-8 * std::max(1.0, n2));
      CHECK(gamma_eigenvalue(m, Side::p, k) == -k);
    }
    for (int k = 0; k < K; ++k) {
      double const n2 = std::pow(l2_norm(dec.q[k]), 2);
      CHECK(std::abs(l2_inner(gf, dec.q[k]) - Complex(gamma_eigenvalue(m, Side::q, k) * n2)) <=
            1e-8 * std::max(1.0, n2));
      CHECK(gamma_eigenvalue(m, Side::q, k) == k + m);
    }
  }
}

TEST_CASE("circle decomposition") {
  RulePtr const rule = build_quadrature(1, 20);
  SpectralDecomposition const one = fourier_circle(
      SphereFunction::sample(rule, [](Vector1 const&) { return Multivector::scalar(2, 1.0); }), 8);
  CHECK(one.p[0].max_abs() == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 1; k <= 8; ++k) CHECK(one.p[k].max_abs() <= 1e-14);
  for (int k = 0; k < 8; ++k) CHECK(one.q[k].max_abs() <= 1e-14);

  SphereFunction const z = SphereFunction::sample(rule, [](Vector1 const& x) {
    Multivector v = Multivector::scalar(2, x[0]);
    v[0b11] = -x[1];
    return v;
  });
  SpectralDecomposition const dec = fourier_circle(z, 8);
  CHECK(gap(dec.p[1], z) <= 1e-14);
  CHECK(dec.residual_norm <= 1e-14);

  // Oracle pieces land in the right Fourier modes.
  std::mt19937_64 rng(97);
  std::vector<SphereFunction> ps;
  std::vector<SphereFunction> qs;
  SphereFunction f(rule);
  for (int k = 0; k <= 5; ++k) {
    ps.push_back(sample(rule, random_piece(1, k, false, rng)));
    f += ps.back();
  }
  for (int k = 0; k < 5; ++k) {
    qs.push_back(sample(rule, random_piece(1, k, true, rng)));
    f += qs.back();
  }
  SpectralDecomposition const a = fourier_circle(f, 5);
  SpectralDecomposition const b = decompose(f, 5);
  for (int k = 0; k <= 5; ++k) {
    CHECK(gap(a.p[k], ps[k]) <= 1e-10);
    CHECK(gap(a.p[k], b.p[k]) <= 1e-12);
  }
  for (int k = 0; k < 5; ++k) {
    CHECK(gap(a.q[k], qs[k]) <= 1e-10);
    CHECK(gap(a.q[k], b.q[k]) <= 1e-12);
  }
  CHECK_THROWS_AS(fourier_circle(SphereFunction(build_quadrature(2, 4)), 1), std::invalid_argument);
}

TEST_CASE("heat flow multipliers") {
  CHECK(component_multiplier(2, 1.0, Side::p, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(component_multiplier(2, 1.0, Side::q, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  for (int m = 1; m <= 4; ++m) {
    for (int k = 0; k <= 12; ++k) {
      // λ from ((m-1) - Γ)Γ at the component's Γ-eigenvalue.
      double const gp = gamma_eigenvalue(m, Side::p, k);
      double const gq = gamma_eigenvalue(m, Side::q, k);
      double const lp = (m - 1.0 - gp) * gp;
      double const lq = (m - 1.0 - gq) * gq;
      CHECK(lp == -k * (k + m - 1.0));
      CHECK(lq == -(k + 1.0) * (k + m));
      CHECK(component_multiplier(m, 0.7, Side::p, k) ==
            doctest::Approx(std::exp(0.7 * lp / 2.0)).epsilon(1e-14));
      CHECK(component_multiplier(m, 0.7, Side::q, k) ==
            doctest::Approx(std::exp(0.7 * lq / 2.0)).epsilon(1e-14));
    }
  }

  std::mt19937_64 rng(101);
  int const m = 2;
  int const K = 4;
  RulePtr const rule = build_quadrature(m, 2 * K + 4);
  MvPolynomial total(m + 1);
  for (int k = 0; k <= K; ++k) total += random_piece(m, k, false, rng);
  for (int k = 0; k < K; ++k) total += random_piece(m, k, true, rng);
  SphereFunction const f = sample(rule, total);
  SpectralDecomposition const dec = decompose(f, K);
  SpectralDecomposition const same = heat_flow(dec, 0.0);
  CHECK(gap(same.sum(), dec.sum()) == 0.0);
  CHECK_THROWS_AS(heat_flow(dec, -0.1), std::invalid_argument);

  double const t = 1.0;
  SpectralDecomposition const flowed = heat_flow(dec, t);
  for (int k = 0; k <= K; ++k) {
    CHECK(gap(flowed.p[k], component_multiplier(m, t, Side::p, k) * dec.p[k]) <= 1e-15);
  }
  // Against quadrature with the heat kernel on a finer rule.
  KernelTruncation const trunc = plan_truncation(m, t, 1e-12, 1.0, 1.0);
  RulePtr const fine = build_quadrature(m, trunc.max_degree + K + 2);
  SphereFunction const f_fine = sample(fine, total);
  SphereFunction const g = flowed.sum();
  for (std::size_t i = 0; i < rule->size(); i += 7) {
    Vector1 const& eta = rule->nodes[i];
    Multivector direct(m + 1);
    for (std::size_t j = 0; j < fine->size(); ++j) {
      direct.add_scaled(heat_kernel(m, t, trunc, eta, fine->nodes[j]) * f_fine[j], fine->weights[j]);
    }
    CHECK(distance(direct, g[i]) <= 1e-7 * std::max(1.0, g.max_abs()));
  }
}

TEST_CASE("off-node component evaluation") {
  std::mt19937_64 rng(103);
  for (int m = 1; m <= 3; ++m) {
    RulePtr const rule = build_quadrature(m, 10);
    MvPolynomial const p = random_piece(m, 3, false, rng);
    MvPolynomial const q = random_piece(m, 2, true, rng);
    SphereFunction const f = sample(rule, p + q);
    for (int i = 0; i < 4; ++i) {
      Vector1 const eta = oracle::random_unit(m + 1, rng);
      CHECK(distance(evaluate_component(sample(rule, p), Side::p, 3, eta), p.evaluate(eta)) <= 1e-9);
      std::vector<Multivector> pv;
      std::vector<Multivector> qv;
      evaluate_components(f, 3, 2, eta, pv, qv);
      CHECK(pv.size() == 4);
      CHECK(qv.size() == 3);
      CHECK(distance(pv[3], p.evaluate(eta)) <= 1e-9);
      CHECK(distance(qv[2], q.evaluate(eta)) <= 1e-9);
      CHECK(pv[1].max_abs() <= 1e-9);
    }
  }
}

TEST_CASE("decomposition checks exactness") {
  RulePtr const rule = build_quadrature(2, 8);
  CHECK_THROWS_AS(decompose(SphereFunction(rule), 4), std::invalid_argument);
  CHECK_NOTHROW(decompose(SphereFunction(rule), 3));
  nlohmann::json const j = to_json(decompose(SphereFunction(rule), 3));
  CHECK(j.at("K") == 3);
}
