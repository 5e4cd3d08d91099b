#pragma once

#include <cstdint>

#include "ratchet/lattice.hpp"
#include "ratchet/potential.hpp"
#include "ratchet/schedule.hpp"

namespace ratchet {

// Which discretization supplies the step probabilities: the original
// Parrondo-game form (p0, p1 from rho = 1 - lambda/n) or the first-order
// expanded form that converges faster and coincides with the explicit
// finite-difference scheme.
enum class WalkVariant { kOriginal, kImproved };

struct ScaledWalkParams {
  RatchetParams base;
  int n = 1;  // n^2 steps per unit time, spacing 1/n
  WalkVariant variant = WalkVariant::kImproved;
};

struct StepProbs {
  double p;   // up-probability of the free (potential off) walk
  double p0;  // up-probability on the steep segment, mod(j, nL) < nl
  double p1;  // up-probability on the shallow segment
};

// rho = 1 - lambda/n, eps = kappa/(2n), then
//   p0 = rho^((1-alpha)/alpha) / (1 + rho^((1-alpha)/alpha)) - eps,
//   p1 = 1/(1+rho) - eps,  p = 1/2 - eps.
// Throws NumericalError when any probability (or rho) leaves (0,1).
StepProbs probs_original(const ScaledWalkParams& w);

// p0 = (1 - lambda(1-alpha)/(2 n alpha) - kappa/n)/2,
// p1 = (1 + lambda/(2n) - kappa/n)/2,  p = (1 - kappa/n)/2.
StepProbs probs_improved(const ScaledWalkParams& w);

StepProbs walk_probs(const ScaledWalkParams& w);  // dispatch on variant

// 0 on the steep (left-drift) segment mod(j, nL) < nl, 1 otherwise.
int regime_index(std::int64_t j, int n, int l, int L);

// One step of the homogeneous walk: P'(j) = P(j+1)(1-p) + P(j-1)p.
LatticeDistribution step_free(const LatticeDistribution& d, double p);

// One step with site-dependent probabilities:
// P'(j) = P(j+1)(1 - p_{I(j+1)}) + P(j-1) p_{I(j-1)}.
LatticeDistribution step_ratchet(const LatticeDistribution& d, double p0, double p1,
                                 int n, int l, int L);

// Runs total_steps steps from d0, choosing step_free when zeta(k/n^2) = 0 and
// step_ratchet when zeta(k/n^2) = 1, starting at k = 0 (free phase first).
// Tails below kTailThreshold are trimmed each step; the accumulated trimmed
// mass is audited against kTruncationBudget.
LatticeDistribution propagate_flashing(const LatticeDistribution& d0,
                                       const ScaledWalkParams& w,
                                       const FlashingSchedule& sched,
                                       std::int64_t total_steps);

inline constexpr double kTailThreshold = 1e-30;
inline constexpr double kTruncationBudget = 1e-10;

}  // namespace ratchet
