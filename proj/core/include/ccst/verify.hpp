#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccst/polynomial.hpp"
#include "ccst/transform.hpp"

namespace ccst {

struct Tolerances {
  double isometry = 1e-6;
  double residual = 1e-8;
  double dirac_fd = 1e-6;
  double fd_step = 1e-4;
  double roundtrip = 1e-7;
};

struct VerifyConfig {
  int m = 2;
  double t = 1.0;
  int max_degree = 6;
  int trials = 20;
  std::uint64_t seed = 0;
  /// 0 selects 2K+4.
  int quadrature_degree = 0;
  int fd_points = 4;
  int constraint_degree = 12;
  unsigned threads = 1;
  Tolerances tol;
};

struct TrialResult {
  int index = 0;
  std::uint64_t seed = 0;
  double input_norm = 0.0;
  double isometry_ratio = 0.0;
  double band_residual = 0.0;
  std::optional<double> roundtrip_error;
  double dirac_residual = 0.0;
  /// Largest |‖U^t c‖/‖c‖ - 1| over the nonzero components c of the input.
  double mode_isometry_error = 0.0;
};

struct ConstraintResult {
  int k = 0;
  char system = 'P';
  double target_log = 0.0;
  double analytic_log = 0.0;
  double numeric_log = 0.0;
};

struct UnitarityReport {
  VerifyConfig config;
  std::vector<TrialResult> trials;
  std::vector<ConstraintResult> constraints;
  /// cst_forward against direct kernel quadrature, first trial.
  double direct_quadrature_error = 0.0;
  double concentration_mass = 0.0;
  bool roundtrip_skipped = false;
  std::vector<std::string> failures;
  bool pass = false;
};

/// Seed for trial i derived from the run seed; independent of thread count.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

/// Restriction to the rule's nodes of a random polynomial of degree <= K with
/// standard normal complex coefficients; band-limited by construction.
SphereFunction random_band_limited(RulePtr const& rule, int max_degree,
                                   std::mt19937_64& rng);

/// Uniform random point with radius in [r_lo, r_hi].
Vector1 random_point(int generators, double r_lo, double r_hi, std::mt19937_64& rng);
Vector1 random_unit_vector(int generators, std::mt19937_64& rng);

/// Runs every unitarity check of the transform for one (m, t, K).
/// Deterministic given the seed. Failures are recorded, never thrown.
UnitarityReport verify_unitarity(VerifyConfig const& config);

/// Worker count from CCST_THREADS, falling back to the hardware count.
unsigned default_thread_count();

nlohmann::json to_json(UnitarityReport const& report);

}  // namespace ccst
