#include <CLI11.hpp>
#include <cstdio>
#include <exception>

#include "commands.hpp"
#include "ratchet/errors.hpp"
#include "ratchet/version.hpp"

namespace {

// exit codes: 0 ok, 2 usage error, 3 numerical failure
constexpr int kUsageError = 2;
constexpr int kNumericalError = 3;

void add_model_flags(CLI::App* cmd, ratchet::cli::ModelOpts& model, bool with_scale = true) {
  cmd->add_option("--alpha", model.alpha, "shape parameter as an exact fraction, e.g. 1/4");
  cmd->add_option("--L", model.L, "spatial period (and amplitude) of the sawtooth");
  auto* lam = cmd->add_option("--lambda", model.lambda,
                              "amplitude parameter; gamma = lambda (1-alpha)/2");
  auto* gam = cmd->add_option("--gamma", model.gamma, "potential amplitude gamma directly");
  gam->excludes(lam);
  auto* kap = cmd->add_option("--kappa", model.kappa, "tilt slope kappa directly");
  auto* the = cmd->add_option("--theta", model.theta, "tilt as kappa = theta*kappa0/2");
  kap->excludes(the);
  the->excludes(kap);
  cmd->add_option("--kappa0", model.kappa0, "reference kappa0 for --theta");
  cmd->add_option("--tau1", model.tau1, "off-phase duration as an exact fraction");
  cmd->add_option("--tau2", model.tau2, "on-phase duration as an exact fraction");
  if (with_scale) cmd->add_option("--n", model.n, "lattice scale (multiple of m)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerics for tilted and tilted-flashing Brownian ratchets"};
  app.set_version_flag("--version", ratchet::kVersion);
  app.require_subcommand(1);

  ratchet::cli::CommonOpts common;
  app.add_option("--out-dir", common.out_dir, "directory for emitted files")
      ->capture_default_str();
  app.add_flag("--force", common.force, "allow overwriting existing outputs");
  app.add_option("--threads", common.threads, "worker threads (0 = hardware)");
  app.add_option("--seed", common.seed, "seed for stochastic commands");

  ratchet::cli::ModelOpts density_model;
  ratchet::cli::DensityOpts density_opts;
  auto* density = app.add_subcommand("density", "time-t density of the flashing ratchet");
  add_model_flags(density, density_model);
  density->add_option("--method", density_opts.method, "rw | rw-improved | fp | em")
      ->check(CLI::IsMember({"rw", "rw-improved", "fp", "em"}));
  density->add_option("--start", density_opts.start, "point:<x> or stationary");
  density->add_option("--paths", density_opts.paths, "Monte Carlo paths (method em)");
  density->add_option("--bin-width", density_opts.bin_width, "histogram bin (method em)");

  ratchet::cli::ModelOpts table_model;
  int table_which = 1;
  auto* table = app.add_subcommand("table", "13-row tilt tables (point or stationary start)");
  add_model_flags(table, table_model);
  table->add_option("--which", table_which, "1 = start at 0, 2 = start at stationarity");

  ratchet::cli::ModelOpts kappa0_model;
  double kappa0_tol = 1e-6;
  auto* kappa0 = app.add_subcommand("kappa0", "tilt slope with zero mean displacement");
  add_model_flags(kappa0, kappa0_model);
  kappa0->add_option("--tol", kappa0_tol, "bisection tolerance on the mean");

  ratchet::cli::ModelOpts sweep_model;
  std::string lambda_range = "1:5:5", theta_range = "-1:4:11";
  auto* sweep = app.add_subcommand("sweep", "mean/skewness grids over lambda and theta");
  add_model_flags(sweep, sweep_model);
  sweep->add_option("--lambda-range", lambda_range, "start:stop:count");
  sweep->add_option("--theta-range", theta_range, "start:stop:count");

  double p_rho = 1.0 / 3.0, p_eps = 1.0 / 200.0, p_c = 0.5;
  int p_l = 1, p_L = 3;
  std::string p_pattern;
  auto* parrondo = app.add_subcommand("parrondo", "long-run rates of the biased games");
  parrondo->add_option("--rho", p_rho, "game B parameter rho in (0,1)");
  parrondo->add_option("--l", p_l, "numerator of alpha = l/L");
  parrondo->add_option("--L", p_L, "period of game B");
  parrondo->add_option("--eps", p_eps, "bias parameter");
  parrondo->add_option("--c", p_c, "mixture weight on game A");
  parrondo->add_option("--pattern", p_pattern, "optional periodic pattern, e.g. AABB");

  ratchet::cli::ModelOpts stationary_model;
  std::string stationary_kind = "analytic";
  int stationary_points = 401;
  auto* stationary = app.add_subcommand("stationary", "wrapped-process stationary laws");
  add_model_flags(stationary, stationary_model);
  stationary->add_option("--kind", stationary_kind, "analytic | flashing-empirical")
      ->check(CLI::IsMember({"analytic", "flashing-empirical"}));
  stationary->add_option("--points", stationary_points, "sample count (analytic)");

  ratchet::cli::ModelOpts verify_model;
  long long verify_steps = 0;
  double verify_tol = 1e-12;
  auto* verify = app.add_subcommand("verify", "cross-method consistency checks");
  verify->require_subcommand(1);
  auto* verify_fp = verify->add_subcommand(
      "fp-equivalence", "finite-difference scheme vs improved random walk");
  add_model_flags(verify_fp, verify_model);
  verify_fp->add_option("--steps", verify_steps, "steps to compare (0 = full period)");
  verify_fp->add_option("--tolerance", verify_tol, "failure threshold on the sup norm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*density) return ratchet::cli::cmd_density(density_model, density_opts, common);
    if (*table) return ratchet::cli::cmd_table(table_which, table_model, common);
    if (*kappa0) return ratchet::cli::cmd_kappa0(kappa0_model, kappa0_tol, common);
    if (*sweep) return ratchet::cli::cmd_sweep(sweep_model, lambda_range, theta_range, common);
    if (*parrondo) {
      return ratchet::cli::cmd_parrondo(p_rho, p_l, p_L, p_eps, p_c, p_pattern, common);
    }
    if (*stationary) {
      return ratchet::cli::cmd_stationary(stationary_kind, stationary_model,
                                          stationary_points, common);
    }
    if (*verify_fp) {
      return ratchet::cli::cmd_verify_fp(verify_model, verify_steps, verify_tol, common);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageError;
  } catch (const ratchet::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return kNumericalError;
  }
  return 0;
}
