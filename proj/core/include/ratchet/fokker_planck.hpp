#pragma once

#include <cstdint>
#include <optional>

#include "ratchet/lattice.hpp"
#include "ratchet/potential.hpp"
#include "ratchet/schedule.hpp"

namespace ratchet {

// Discretized density for the explicit finite-difference scheme with
// dt = 1/n^2, dy = 1/n. Stored entries are probabilities P = density * dy *
// parity-factor, identical storage to the random-walk propagation, so the two
// code paths are comparable site by site.
struct FpGrid {
  LatticeDistribution dist;

  static FpGrid point_start(int n, std::int64_t site) {
    return {LatticeDistribution::point_mass(n, site)};
  }
};

// One explicit step
//   p(t+dt, y_j) = p(t, y_{j+1}) (1 - mu(y_{j+1})/n)/2
//                + p(t, y_{j-1}) (1 + mu(y_{j-1})/n)/2,
// where mu is drift_mu when the potential is on and the constant -kappa_off
// when it is off. Throws NumericalError when a coefficient (1 +- mu/n) would
// leave [0,1] (the explicit scheme's stability bound max |mu| < n).
FpGrid fp_step(const FpGrid& g, const RatchetParams& params, bool flash_on,
               double kappa_off);

// Alternates off/on phases exactly like the random-walk propagation:
// step k uses the off form when zeta(k/n^2) = 0 and the on form otherwise.
FpGrid fp_propagate(const FpGrid& g0, const RatchetParams& params,
                    const FlashingSchedule& sched, int n, std::int64_t total_steps);

// Propagates the same point start through both the finite-difference scheme
// and the improved random walk (lambda = 2*gamma/(1-alpha) unless overridden)
// and returns the sup-norm difference. With the matched lambda the two
// recursions are algebraically identical; the residual is pure rounding.
double equivalence_report(const RatchetParams& params, const FlashingSchedule& sched,
                          int n, std::int64_t steps,
                          std::optional<double> lambda_override = std::nullopt);

}  // namespace ratchet
