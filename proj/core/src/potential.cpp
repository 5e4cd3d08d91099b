#include "ratchet/potential.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ratchet {

namespace {

void validate_shape(int l, int L) {
  if (L < 2 || l < 1 || l >= L) {
    throw std::invalid_argument("require 1 <= l < L, got l=" + std::to_string(l) +
                                " L=" + std::to_string(L));
  }
  if (std::gcd(l, L) != 1) {
    throw std::invalid_argument("alpha = l/L must be in lowest terms, got l=" +
                                std::to_string(l) + " L=" + std::to_string(L));
  }
}

// Remainder of x in [0, L).
double mod_period(double x, double L) {
  double r = x - L * std::floor(x / L);
  if (r >= L) r -= L;  // x just below a period boundary can round up to L
  if (r < 0.0) r = 0.0;
  return r;
}

}  // namespace

RatchetParams RatchetParams::from_gamma(int l, int L, double gamma, double kappa) {
  validate_shape(l, L);
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
  RatchetParams p;
  p.l = l;
  p.L = L;
  p.gamma = gamma;
  p.kappa = kappa;
  return p;
}

RatchetParams RatchetParams::from_lambda(int l, int L, double lambda, double kappa) {
  validate_shape(l, L);
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  RatchetParams p;
  p.l = l;
  p.L = L;
  double alpha = static_cast<double>(l) / L;
  p.gamma = lambda * (1.0 - alpha) / 2.0;
  p.kappa = kappa;
  p.lambda_given = lambda;
  return p;
}

LangevinParams::LangevinParams(double eta_, double beta_, double F_, double kB_T_)
    : eta(eta_), beta(beta_), F(F_), kB_T(kB_T_) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  if (!(kB_T > 0.0)) throw std::invalid_argument("kB_T must be positive");
}

double sawtooth_V(double x, const RatchetParams& p) {
  double r = mod_period(x, p.L);
  double alpha = p.alpha();
  double aL = static_cast<double>(p.l);  // alpha * L is exactly l
  if (r < aL) return r / alpha;
  return (p.L - r) / (1.0 - alpha);
}

double drift_mu(double x, const RatchetParams& p) {
  double r = mod_period(x, p.L);
  double aL = static_cast<double>(p.l);
  if (r < aL) return -p.gamma / p.alpha() - p.kappa;
  return p.gamma / (1.0 - p.alpha()) - p.kappa;
}

double potential_M(double x, const RatchetParams& p) {
  if (x < 0.0 || x > static_cast<double>(p.L)) {
    throw std::invalid_argument("potential_M is defined on [0, L]");
  }
  double alpha = p.alpha();
  double V = x <= static_cast<double>(p.l) ? x / alpha : (p.L - x) / (1.0 - alpha);
  return -(p.gamma * V + p.kappa * x);
}

double tilted_potential(double x, const RatchetParams& p) {
  return p.gamma * sawtooth_V(x, p) + p.kappa * x;
}

std::pair<double, double> langevin_to_ratchet(const LangevinParams& lp) {
  double gamma = lp.beta / (2.0 * lp.kB_T);
  double kappa = -lp.F / (2.0 * lp.kB_T);
  return {gamma, kappa};
}

}  // namespace ratchet
