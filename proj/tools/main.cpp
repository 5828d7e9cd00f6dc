// ccst: verification and tabulation front end for the ccst library.
//
// Exit status: 0 success, 1 a check failed, 2 bad usage or input.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ccst/format.hpp"
#include "ccst/verify.hpp"

namespace {

using namespace ccst;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int m = 2;
  double t = 1.0;
  std::optional<int> K;
  int degree = 0;
  std::optional<std::uint64_t> seed;
  double tol_iso = 1e-6;
  double tol_res = 1e-8;
  std::string out;
  std::string format = "json";
  std::string config;
};

void add_common(CLI::App* app, Common& c, bool with_tolerances) {
  app->add_option("--m", c.m, "sphere dimension (1..4)");
  app->add_option("--t", c.t, "heat time");
  app->add_option("--K", c.K, "band limit (harmonic degree); default 16 at m=1, else 8");
  app->add_option("--degree", c.degree, "quadrature exactness degree (0: 2K+4)");
  app->add_option("--seed", c.seed, "random seed");
  if (with_tolerances) {
    app->add_option("--tol-iso", c.tol_iso, "isometry tolerance");
    app->add_option("--tol-res", c.tol_res, "residual tolerance");
  }
  app->add_option("--out", c.out, "output file (default: stdout)");
  app->add_option("--format", c.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--config", c.config, "key=value file; flags take precedence");
}

// Config values fill only options left unset on the command line.
void apply_config(CLI::App* app, std::string const& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  for (CLI::ConfigItem const& item : CLI::ConfigINI().from_config(in)) {
    std::string key = item.name;
    if (!item.parents.empty()) throw UsageError("config: sections are not supported");
    if (key == "config") throw UsageError("config: nested config files are not supported");
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config: unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    for (std::string const& value : item.inputs) opt->add_result(value);
    try {
      opt->run_callback();
    } catch (CLI::Error const& e) {
      throw UsageError("config: bad value for '" + key + "': " + e.what());
    }
  }
}

void require(bool ok, std::string const& field, std::string const& why) {
  if (!ok) throw UsageError("invalid --" + field + ": " + why);
}

void validate_m(Common const& c, int lo) {
  require(c.m >= lo && c.m <= 4, "m", "must be in " + std::to_string(lo) + "..4 (got " +
                                          std::to_string(c.m) + ")");
}

void validate_t(Common const& c, bool allow_zero) {
  bool const ok = std::isfinite(c.t) && (allow_zero ? c.t >= 0.0 : c.t > 0.0);
  require(ok, "t", std::string("must be ") + (allow_zero ? "non-negative" : "positive") +
                       " (got " + format_double(c.t) + ")");
}

int band_limit(Common const& c) { return c.K.value_or(c.m == 1 ? 16 : 8); }

void validate_K(Common const& c) {
  int const K = band_limit(c);
  require(K >= 0 && K <= 18, "K", "must be in 0..18 (got " + std::to_string(K) + ")");
}

int quadrature_degree(Common const& c) {
  int const K = band_limit(c);
  int const d = c.degree > 0 ? c.degree : 2 * K + 4;
  require(d >= 2 * K + 2, "degree", "must be at least 2K+2 = " + std::to_string(2 * K + 2));
  require(d <= kMaxQuadratureDegree, "degree",
          "must be at most " + std::to_string(kMaxQuadratureDegree));
  return d;
}

std::string timestamp() {
  std::time_t const now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Single writer; the destination only ever holds a complete document.
void emit(std::string const& path, std::string const& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  namespace fs = std::filesystem;
  fs::path const target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw UsageError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<double> parse_vector(std::string const& text, std::string const& field) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (std::exception const&) {
      throw UsageError("invalid --" + field + ": '" + text + "' is not a comma-separated list");
    }
  }
  return values;
}

// verify ---------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  int trials = 20;
  double tol_fd = 1e-6;
  double tol_roundtrip = 1e-7;
};

int cmd_verify(VerifyArgs const& a) {
  Common const& c = a.common;
  validate_m(c, 1);
  validate_t(c, false);
  validate_K(c);
  require(a.trials >= 1 && a.trials <= 10000, "trials", "must be in 1..10000");
  require(c.tol_iso > 0.0, "tol-iso", "must be positive");
  require(c.tol_res > 0.0, "tol-res", "must be positive");

  VerifyConfig config;
  config.m = c.m;
  config.t = c.t;
  config.max_degree = band_limit(c);
  config.trials = a.trials;
  config.seed = c.seed.value_or(0);
  config.quadrature_degree = quadrature_degree(c);
  config.threads = default_thread_count();
  config.tol.isometry = c.tol_iso;
  config.tol.residual = c.tol_res;
  config.tol.dirac_fd = a.tol_fd;
  config.tol.roundtrip = a.tol_roundtrip;

  UnitarityReport const report = verify_unitarity(config);
  if (c.format == "csv") {
    std::ostringstream out;
    out << "k,system,target_log,analytic_log,numeric_log\n";
    for (ConstraintResult const& r : report.constraints) {
      out << r.k << ',' << r.system << ',' << format_double(r.target_log) << ','
          << format_double(r.analytic_log) << ',' << format_double(r.numeric_log) << '\n';
    }
    emit(c.out, out.str());
  } else {
    json j = to_json(report);
    j["timestamp"] = timestamp();
    emit(c.out, j.dump(2) + "\n");
  }
  for (std::string const& f : report.failures) std::cerr << "FAIL " << f << '\n';
  return report.pass ? kExitOk : kExitCheck;
}

// density --------------------------------------------------------------------

struct DensityArgs {
  Common common;
  double y_min = -3.0;
  double y_max = 3.0;
  double y_step = 0.01;
  std::vector<double> moments;
};

int cmd_density(DensityArgs const& a) {
  Common const& c = a.common;
  validate_m(c, 1);
  validate_t(c, false);
  require(std::isfinite(a.y_step) && a.y_step > 0.0, "y-step", "must be positive");
  require(std::isfinite(a.y_min) && std::isfinite(a.y_max), "y-min", "grid ends must be finite");
  std::vector<double> ys;
  for (long i = 0;; ++i) {
    double const y = a.y_min + static_cast<double>(i) * a.y_step;
    if (y > a.y_max + 1e-12 * a.y_step) break;
    ys.push_back(y);
    if (ys.size() > 10'000'000) throw UsageError("invalid --y-step: grid too large");
  }
  if (ys.empty()) throw UsageError("invalid y grid: no points in [y-min, y-max]");

  MeasureParams const params{c.m, c.t};
  std::vector<std::vector<double>> rows;
  double riemann = 0.0;
  for (double y : ys) {
    std::vector<double> row{y, rho_density(params, y)};
    riemann += row[1] * a.y_step;
    for (double mom : a.moments) row.push_back(row[1] * std::exp(mom * y));
    rows.push_back(std::move(row));
  }

  if (c.format == "csv") {
    std::ostringstream out;
    out << "y,rho";
    for (double mom : a.moments) out << ",rho_exp_" << format_double(mom) << "y";
    out << '\n';
    for (auto const& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
      out << '\n';
    }
    emit(c.out, out.str());
  } else {
    json j;
    j["m"] = c.m;
    j["t"] = c.t;
    j["y_step"] = a.y_step;
    j["riemann_sum"] = riemann;
    j["analytic_mass"] = std::exp(radial_moment_log(params, 0.0));
    json moments = json::array();
    for (double mom : a.moments) {
      moments.push_back({{"a", mom}, {"log_moment", radial_moment_log(params, mom)}});
    }
    j["moments"] = std::move(moments);
    j["rows"] = rows;
    emit(c.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

// kernel-table ---------------------------------------------------------------

struct KernelArgs {
  Common common;
  double tolerance = 1e-12;
  double r_min = 0.2;
  double r_max = 5.0;
  int last = -1;
  std::string x;
  std::string xi;
};

int cmd_kernel_table(KernelArgs const& a) {
  Common const& c = a.common;
  if (c.m == 1) {
    throw UsageError(
        "invalid --m: kernel tables need m >= 2; at m = 1 the transform uses the circle "
        "Fourier path (see 'ccst transform --m 1')");
  }
  validate_m(c, 2);
  validate_t(c, false);
  require(a.tolerance > 0.0 && a.tolerance < 1.0, "tolerance", "must be in (0, 1)");
  require(a.r_min > 0.0 && a.r_max >= a.r_min, "r-min", "need 0 < r-min <= r-max");
  KernelTruncation const trunc = plan_truncation(c.m, c.t, a.tolerance, a.r_min, a.r_max);
  int const last = a.last >= 0 ? a.last : trunc.max_degree + 5;
  std::vector<KernelTableRow> const rows = kernel_table(c.m, trunc, last);

  std::optional<Multivector> sample;
  if (!a.x.empty() || !a.xi.empty()) {
    Vector1 const x(parse_vector(a.x, "x"));
    Vector1 xi(parse_vector(a.xi, "xi"));
    require(x.dimension() == c.m + 1, "x", "needs m+1 components");
    require(xi.dimension() == c.m + 1, "xi", "needs m+1 components");
    require(xi.norm() > 0.0, "xi", "must be nonzero");
    xi = xi.normalized();
    try {
      sample = ck_heat_kernel(c.m, c.t, trunc, x, xi);
    } catch (std::domain_error const& e) {
      throw UsageError(std::string("invalid --x: ") + e.what());
    }
  }

  if (c.format == "csv") {
    std::ostringstream out;
    out << "k,multiplier,bound_log,retained\n";
    for (KernelTableRow const& r : rows) {
      out << r.k << ',' << format_double(r.multiplier) << ',' << format_double(r.bound_log) << ','
          << (r.retained ? "yes" : "no") << '\n';
    }
    emit(c.out, out.str());
  } else {
    json j;
    j["m"] = c.m;
    j["t"] = c.t;
    j["tolerance"] = a.tolerance;
    j["window"] = {a.r_min, a.r_max};
    j["truncation_degree"] = trunc.max_degree;
    j["tail_bound_log"] = trunc.tail_bound_log;
    json table = json::array();
    for (KernelTableRow const& r : rows) {
      table.push_back({{"k", r.k},
                       {"multiplier", r.multiplier},
                       {"bound_log", r.bound_log},
                       {"retained", r.retained}});
    }
    j["rows"] = std::move(table);
    if (sample) j["ck_heat_kernel"] = to_json(*sample);
    emit(c.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

// transform ------------------------------------------------------------------

struct TransformArgs {
  Common common;
  std::string input;
  std::vector<std::string> at;
  bool inverse = false;
  bool values = false;
};

SphereFunction load_input(std::string const& path, int m, int degree, int& input_degree) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read input file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (json::parse_error const& e) {
    throw UsageError(std::string("malformed input: ") + e.what());
  }
  try {
    std::string const kind = j.at("kind").get<std::string>();
    if (j.contains("m") && j.at("m").get<int>() != m) {
      throw UsageError("input m does not match --m");
    }
    if (kind == "polynomial") {
      MvPolynomial const p = polynomial_from_json(j.at("terms"), m + 1);
      input_degree = degree;
      RulePtr const rule = build_quadrature(m, degree);
      return SphereFunction::sample(rule, [&p](Vector1 const& x) { return p.evaluate(x); });
    }
    if (kind == "sphere_function") {
      input_degree = j.at("degree").get<int>();
      if (input_degree < 0 || input_degree > kMaxQuadratureDegree) {
        throw UsageError("input degree out of range");
      }
      RulePtr const rule = build_quadrature(m, input_degree);
      std::vector<Multivector> values;
      for (json const& v : j.at("values")) values.push_back(multivector_from_json(v, m + 1));
      return SphereFunction(rule, std::move(values));
    }
    throw UsageError("input kind must be 'polynomial' or 'sphere_function'");
  } catch (json::exception const& e) {
    throw UsageError(std::string("malformed input: ") + e.what());
  } catch (std::invalid_argument const& e) {
    throw UsageError(std::string("malformed input: ") + e.what());
  }
}

int cmd_transform(TransformArgs const& a) {
  Common const& c = a.common;
  validate_m(c, 1);
  validate_t(c, false);
  validate_K(c);
  int input_degree = quadrature_degree(c);
  SphereFunction const f = load_input(a.input, c.m, input_degree, input_degree);
  int const K = band_limit(c);
  require(input_degree >= 2 * K + 2, "degree",
          "input rule exactness " + std::to_string(input_degree) + " < 2K+2");

  LaurentMonogenic const image = cst_forward(f, c.t, K);
  json j = to_json(image, a.values);
  double const norm = l2_norm(f);
  j["input_norm"] = norm;
  j["ml2_norm"] = ml2_norm(image, MeasureParams{c.m, c.t});
  j["band_residual"] = l2_norm(f - restrict_to_sphere(ck_extend(decompose(f, K))));

  if (!a.at.empty()) {
    json evals = json::array();
    for (std::string const& text : a.at) {
      Vector1 const x(parse_vector(text, "at"));
      require(x.dimension() == c.m + 1, "at", "needs m+1 components");
      try {
        evals.push_back({{"x", parse_vector(text, "at")}, {"value", to_json(evaluate_laurent(image, x))}});
      } catch (std::domain_error const& e) {
        throw UsageError(std::string("invalid --at: ") + e.what());
      }
    }
    j["evaluations"] = std::move(evals);
  }

  int status = kExitOk;
  if (a.inverse) {
    try {
      SphereFunction const back = cst_inverse(image, c.t);
      j["roundtrip_residual"] = norm > 0.0 ? l2_norm(back - f) / norm : l2_norm(back - f);
    } catch (AmplificationError const& e) {
      j["roundtrip_residual"] = nullptr;
      j["inverse_error"] = e.what();
      std::cerr << "inverse refused: " << e.what() << '\n';
      status = kExitCheck;
    }
  }
  emit(c.out, j.dump(2) + "\n");
  return status;
}

// quadrature -----------------------------------------------------------------

int cmd_quadrature(Common const& c) {
  validate_m(c, 1);
  require(c.degree >= 0 && c.degree <= kMaxQuadratureDegree, "degree",
          "must be in 0.." + std::to_string(kMaxQuadratureDegree));
  RulePtr const rule = build_quadrature(c.m, c.degree);
  std::ostringstream out;
  if (c.format == "csv") {
    write_rule_csv(*rule, out);
  } else {
    json j;
    j["m"] = rule->m;
    j["exactness_degree"] = rule->exactness_degree;
    json nodes = json::array();
    for (Vector1 const& x : rule->nodes) {
      json row = json::array();
      for (int i = 0; i < x.dimension(); ++i) row.push_back(x[i]);
      nodes.push_back(std::move(row));
    }
    j["nodes"] = std::move(nodes);
    j["weights"] = rule->weights;
    out << j.dump(2) << '\n';
  }
  emit(c.out, out.str());
  return kExitOk;
}

// bench ----------------------------------------------------------------------

int cmd_bench(Common const& c, int reps) {
  validate_m(c, 1);
  validate_t(c, false);
  validate_K(c);
  require(reps >= 1, "reps", "must be positive");
  RulePtr const rule = build_quadrature(c.m, quadrature_degree(c));
  std::mt19937_64 rng(c.seed.value_or(0));
  int const K = band_limit(c);
  SphereFunction const f = random_band_limited(rule, K, rng);
  auto const start = std::chrono::steady_clock::now();
  double sink = 0.0;
  for (int i = 0; i < reps; ++i) sink += ml2_norm(cst_forward(f, c.t, K), {c.m, c.t});
  double const seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json j{{"m", c.m},          {"t", c.t},       {"K", K}, {"nodes", rule->size()},
         {"reps", reps},      {"seconds_per_forward", seconds / reps},
         {"checksum", sink / reps}};
  emit(c.out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford coherent state transform: verification and tabulation"};
  app.require_subcommand(1);

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the unitarity and monogenicity checks");
  add_common(verify_cmd, verify.common, true);
  verify_cmd->add_option("--trials", verify.trials, "random band-limited inputs");
  verify_cmd->add_option("--tol-fd", verify.tol_fd, "Dirac residual tolerance");
  verify_cmd->add_option("--tol-roundtrip", verify.tol_roundtrip, "roundtrip tolerance");

  DensityArgs density;
  CLI::App* density_cmd = app.add_subcommand("density", "tabulate the radial density");
  add_common(density_cmd, density.common, false);
  density_cmd->add_option("--y-min", density.y_min);
  density_cmd->add_option("--y-max", density.y_max);
  density_cmd->add_option("--y-step", density.y_step);
  density_cmd->add_option("--moment", density.moments, "add a rho*e^{ay} column")
      ->delimiter(',');

  KernelArgs kernel;
  CLI::App* kernel_cmd = app.add_subcommand("kernel-table", "heat kernel truncation table");
  add_common(kernel_cmd, kernel.common, false);
  kernel_cmd->add_option("--tolerance", kernel.tolerance);
  kernel_cmd->add_option("--r-min", kernel.r_min);
  kernel_cmd->add_option("--r-max", kernel.r_max);
  kernel_cmd->add_option("--last", kernel.last, "last degree listed");
  kernel_cmd->add_option("--x", kernel.x, "sample point, comma separated");
  kernel_cmd->add_option("--xi", kernel.xi, "sample direction, comma separated");

  TransformArgs transform;
  CLI::App* transform_cmd = app.add_subcommand("transform", "apply the transform to an input");
  add_common(transform_cmd, transform.common, false);
  transform_cmd->add_option("--input", transform.input, "JSON input")->required();
  transform_cmd->add_option("--at", transform.at, "evaluation point, comma separated");
  transform_cmd->add_flag("--inverse", transform.inverse, "report the roundtrip residual");
  transform_cmd->add_flag("--values", transform.values, "include node values");

  Common quadrature;
  quadrature.degree = 8;
  CLI::App* quadrature_cmd = app.add_subcommand("quadrature", "export a sphere quadrature rule");
  add_common(quadrature_cmd, quadrature, false);

  Common bench;
  int reps = 3;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time the forward transform");
  add_common(bench_cmd, bench, false);
  bench_cmd->add_option("--reps", reps);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify_cmd) {
      apply_config(verify_cmd, verify.common.config);
      return cmd_verify(verify);
    }
    if (*density_cmd) {
      apply_config(density_cmd, density.common.config);
      return cmd_density(density);
    }
    if (*kernel_cmd) {
      apply_config(kernel_cmd, kernel.common.config);
      return cmd_kernel_table(kernel);
    }
    if (*transform_cmd) {
      apply_config(transform_cmd, transform.common.config);
      return cmd_transform(transform);
    }
    if (*quadrature_cmd) {
      apply_config(quadrature_cmd, quadrature.config);
      return cmd_quadrature(quadrature);
    }
    if (*bench_cmd) {
      apply_config(bench_cmd, bench.config);
      return cmd_bench(bench, reps);
    }
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (CLI::Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheck;
  }
  return kExitUsage;
}
