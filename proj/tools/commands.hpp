#pragma once

#include <optional>
#include <string>

#include "ratchet/potential.hpp"
#include "ratchet/rational.hpp"
#include "ratchet/schedule.hpp"

namespace ratchet::cli {

struct CommonOpts {
  std::string out_dir = ".";
  bool force = false;
  int threads = 0;
  std::uint64_t seed = 0;
};

// Model flags shared by most subcommands. alpha and the flash times are
// parsed as exact rationals; kappa comes either directly (--kappa) or as
// theta * kappa0 / 2 (--theta with --kappa0).
struct ModelOpts {
  std::string alpha = "1/4";
  int L = 4;
  double lambda = 5.0;
  std::optional<double> gamma;
  std::optional<double> kappa;
  double theta = 0.0;
  double kappa0 = 0.2748;
  std::string tau1 = "12/5";
  std::string tau2 = "12/5";
  int n = 100;

  int resolve_l() const;  // alpha * L as an exact integer, or throws
  double resolve_kappa() const { return kappa ? *kappa : theta * kappa0 / 2.0; }
  RatchetParams params() const;
  FlashingSchedule schedule() const;
};

struct DensityOpts {
  std::string method = "rw-improved";  // rw | rw-improved | fp | em
  std::string start = "point:0";
  long long paths = 100000;
  double bin_width = 0.05;
};

int cmd_density(const ModelOpts& model, const DensityOpts& opts, const CommonOpts& common);
int cmd_table(int which, const ModelOpts& model, const CommonOpts& common);
int cmd_kappa0(const ModelOpts& model, double tol, const CommonOpts& common);
int cmd_sweep(const ModelOpts& model, const std::string& lambda_range,
              const std::string& theta_range, const CommonOpts& common);
int cmd_parrondo(double rho, int l, int L, double eps, double c,
                 const std::string& pattern, const CommonOpts& common);
int cmd_stationary(const std::string& kind, const ModelOpts& model, int points,
                   const CommonOpts& common);
int cmd_verify_fp(const ModelOpts& model, long long steps, double tolerance,
                  const CommonOpts& common);

}  // namespace ratchet::cli
