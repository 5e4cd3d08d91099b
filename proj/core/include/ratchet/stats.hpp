#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ratchet/lattice.hpp"
#include "ratchet/rw_approx.hpp"
#include "ratchet/schedule.hpp"

namespace ratchet {

// Areas and heights of the peaks at x = g*L for the requested integers g
// (ascending). The basin of the peak at g*L is the ratchet cell
// [gL - (1-alpha)L, gL + alphaL), except that the first listed peak also
// collects all mass to its left and the last all mass to its right, so the
// areas of a contiguous peak list partition the full distribution. Height is
// the interpolated density at x = gL itself (peaks lean left of gL under
// tilt, so the in-cell maximum would overshoot the value at the peak label).
struct PeakReport {
  std::vector<double> locations;
  std::vector<double> areas;
  std::vector<double> heights;
};

struct SweepGrid {
  std::vector<double> lambda_values;
  std::vector<double> theta_values;
  std::vector<double> mean;      // row-major [lambda][theta]
  std::vector<double> skewness;

  double mean_at(size_t il, size_t it) const { return mean[il * theta_values.size() + it]; }
  double skew_at(size_t il, size_t it) const { return skewness[il * theta_values.size() + it]; }
};

// sum_j (j/n) P(j) - x0_mean.
double mean_displacement(const LatticeDistribution& d, double x0_mean);

// Paper-specific skewness: mass on sites with mod(j, nL) in the open interval
// (0, nl) minus mass on sites with mod(j, nL) in (nl, nL). Sites on the cell
// boundaries (j = 0 or nl mod nL) belong to neither sum. NOT the third
// standardized moment.
double skewness(const LatticeDistribution& d, int l, int L);

PeakReport peak_stats(const DensityCurve& curve, const LatticeDistribution& d, int l,
                      int L, const std::vector<int>& peaks);

// Flashing run over one full period from a point start at 0 with
// gamma = lambda(1-alpha)/2; the workhorse behind tables, kappa0 and sweeps.
LatticeDistribution flashing_run(double lambda, double kappa, int n, int l, int L,
                                 const FlashingSchedule& sched, WalkVariant variant);

// The tilt slope at which mean displacement over one flash period (improved
// walk, point start at 0) vanishes. Bisection on [0, 2(1/2-alpha)L/tau1];
// mean displacement is decreasing in kappa on the bracket. Stops when
// |mean| < tol or the bracket is narrower than 1e-8; throws NumericalError
// if the initial bracket does not straddle zero.
double find_kappa0(double lambda, int n, int l, int L, const FlashingSchedule& sched,
                   double tol);

// Limit of kappa0(lambda) as lambda -> infinity: (1/2 - alpha) L / tau1.
double kappa0_limit(double alpha, double L, double tau1);

// Normal-mixture approximation of the mean displacement,
//   sum_j jL * P(B_{tau1} - kappa*tau1 in ((j-1+alpha)L, (j+alpha)L]),
// truncated once the normal tail mass drops below 1e-12. Kept as a foil: it
// ignores the skew and the finite width of the peaks.
double astumian_mean_approx(double alpha, double L, double kappa, double tau1);

// Full grid of flashing runs from 0 with kappa = theta * kappa0_ref / 2.
// Grid points are independent; they are distributed over `threads` workers
// (0 = hardware concurrency).
SweepGrid sweep(const std::vector<double>& lambda_values,
                const std::vector<double>& theta_values, double kappa0_ref, int n, int l,
                int L, const FlashingSchedule& sched, int threads = 0);

}  // namespace ratchet
