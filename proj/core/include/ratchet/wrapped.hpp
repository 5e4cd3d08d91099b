#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ratchet/lattice.hpp"
#include "ratchet/potential.hpp"
#include "ratchet/rw_approx.hpp"
#include "ratchet/schedule.hpp"

namespace ratchet {

// Probability vector of the wrapped walk on sites {0, ..., nL-1}.
struct WrappedDistribution {
  int n = 1;
  std::vector<double> probs;
};

// Row-stochastic nL x nL transition matrix of the wrapped walk over one flash
// period (steps_used steps; n^2(tau1+tau2) plus one extra ratchet step when
// the parity fix applies).
struct PeriodMatrix {
  int n = 1;
  int states = 0;
  std::int64_t steps_used = 0;
  std::vector<double> entries;  // row-major

  double at(int i, int j) const { return entries[static_cast<size_t>(i) * states + j]; }
};

enum class PhaseKind { kFree, kRatchet };

// Transition matrix of `steps` wrapped single-phase steps, by binary
// exponentiation of the one-step circulant-banded matrix.
PeriodMatrix build_phase_matrix(const ScaledWalkParams& w, PhaseKind phase,
                                std::int64_t steps);

// Full flash period: free phase then ratchet phase. When nL is even and
// n^2(tau1+tau2) is even the period map would split the two parity classes
// into closed sets; one extra ratchet step is appended at the end to restore
// irreducibility (steps_used records the actual count).
PeriodMatrix build_period_matrix(const ScaledWalkParams& w, const FlashingSchedule& sched);

// Left fixed probability vector of P. Iterates the half-lazy operator
// (I + P)/2, which has the same fixed vector and converges even when the
// odd-step period map alternates the two parity classes; stops when the L1
// change drops below 1e-13 (cap 1e6 sweeps), then applies one averaging
// refinement. The result satisfies ||pi P - pi||_1 < 1e-12 or throws.
WrappedDistribution stationary_vector(const PeriodMatrix& P);

// Identifies [0, L) with [-(1-alpha)L, alphaL): sites j < nl keep index j,
// sites j >= nl map to j - nL. The result is a mixed-parity lattice
// distribution supported on [-(n(L-l)), nl).
LatticeDistribution lift_stationary(const WrappedDistribution& d, int l, int L);

// One full flash period started from the stationary law of the wrapped walk.
struct StationaryRun {
  WrappedDistribution pi;
  LatticeDistribution initial;   // lifted stationary law
  LatticeDistribution at_tau1;   // after the free phase
  LatticeDistribution final_;    // after steps_used steps
  std::int64_t steps_used = 0;
  double mean_displacement = 0.0;  // E[final] - E[initial], in x units
};

StationaryRun run_from_stationarity(const ScaledWalkParams& w, const FlashingSchedule& sched);

// E[Y_T - Y_0] over one flash period started from the stationary law.
double mean_displacement_from_stationarity(const ScaledWalkParams& w,
                                           const FlashingSchedule& sched);

// Closed-form stationary density of the wrapped tilted ratchet,
//   phi(x) = phi(0) e^{2M(x)} (1 - [1 - e^{-2M(L)}] I(x)/I(L)),
// with M(x) = -[gamma V(x) + kappa x] and I(x) = int_0^x e^{-2M}. M is
// piecewise linear, so every integral is assembled in closed form per piece.
struct AnalyticStationary {
  struct Piece {
    double x_start, x_end;
    double m_start, slope;
    double i_start;  // I(x_start)
  };

  RatchetParams params;
  double phi0 = 0.0;  // phi(0), fixed by total mass 1
  double bracket_B = 0.0;  // 1 - e^{-2M(L)}
  double i_total = 0.0;    // I(L)
  std::array<Piece, 2> pieces;

  double evaluate(double x) const;           // phi(x) on [0, L]
  double mass_between(double a, double b) const;  // int_a^b phi, 0 <= a <= b <= L
  double mean() const;                       // int_0^L x phi(x) dx
  double mean_lifted() const;                // mean after mapping [alphaL, L) down by L
  double skewness() const;                   // mass(0, alphaL) - mass(alphaL, L)
};

// Throws NumericalError when an exponent 2|M| exceeds 700 (overflow guard).
// With gamma = kappa = 0 the density is uniform.
AnalyticStationary analytic_stationary(const RatchetParams& params);

}  // namespace ratchet
