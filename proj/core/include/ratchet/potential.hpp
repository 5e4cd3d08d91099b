#pragma once

#include <optional>
#include <utility>

namespace ratchet {

// Parameters of the asymmetric sawtooth landscape and its tilt.
//
// alpha = l/L is kept as the integer pair (l, L) in lowest terms so that
// downstream lattice indexing (period n*L, kink at n*l) is exact. L is both
// the spatial period and the amplitude of the sawtooth. gamma scales the
// potential, kappa is the slope of the added tilt.
struct RatchetParams {
  int l = 1;
  int L = 2;
  double gamma = 0.0;
  double kappa = 0.0;
  // Set when the amplitude was supplied as lambda with gamma = lambda*(1-alpha)/2.
  std::optional<double> lambda_given;

  static RatchetParams from_gamma(int l, int L, double gamma, double kappa);
  static RatchetParams from_lambda(int l, int L, double lambda, double kappa);

  double alpha() const { return static_cast<double>(l) / static_cast<double>(L); }
  double lambda() const {
    return lambda_given ? *lambda_given : 2.0 * gamma / (1.0 - alpha());
  }

  // alpha != 1/2. The sawtooth needs asymmetry for directed motion, but every
  // formula below stays valid at alpha = 1/2, so this is advisory only.
  bool is_asymmetric() const { return 2 * l != L; }

  // -gamma/alpha < kappa < gamma/(1-alpha): the tilted potential still has
  // local minima, i.e. the process is still a ratchet. Advisory only.
  bool is_ratchet() const {
    return -gamma / alpha() < kappa && kappa < gamma / (1.0 - alpha());
  }
};

// Parameters of the overdamped Langevin form
//   eta * dx = [-beta * V'(x) + F] dt + sqrt(2 eta kB T) db.
struct LangevinParams {
  double eta = 1.0;    // friction, > 0
  double beta = 1.0;   // potential amplitude scale, >= 0
  double F = 0.0;      // static homogeneous force
  double kB_T = 1.0;   // Boltzmann constant times temperature, > 0

  LangevinParams(double eta_, double beta_, double F_, double kB_T_);
};

// Sawtooth potential: x/alpha on [0, alpha*L], (L-x)/(1-alpha) on [alpha*L, L],
// extended periodically to all of R. Range [0, L]; the peak value equals L.
double sawtooth_V(double x, const RatchetParams& p);

// Drift field -[gamma*V'(x) + kappa]. The kink at alpha*L belongs to the
// second branch: the value is -gamma/alpha - kappa on [0, alpha*L) and
// gamma/(1-alpha) - kappa on [alpha*L, L), extended periodically.
double drift_mu(double x, const RatchetParams& p);

// Integrated drift M(x) = -[gamma*V(x) + kappa*x] on [0, L] only; the kappa*x
// term makes any extension non-periodic. M(0) = 0.
double potential_M(double x, const RatchetParams& p);

// gamma*V(x) + kappa*x for all x; plot-data emission only.
double tilted_potential(double x, const RatchetParams& p);

// Maps Langevin parameters onto (gamma, kappa) of the unit-diffusion form:
// gamma = beta/(2 kB T), kappa = -F/(2 kB T).
std::pair<double, double> langevin_to_ratchet(const LangevinParams& lp);

}  // namespace ratchet
