#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ratchet/lattice.hpp"
#include "ratchet/potential.hpp"
#include "ratchet/schedule.hpp"

namespace ratchet {

// Euler-Maruyama run configuration with step h = 1/n^2 and noise Z/n:
//   X_{k+1} = X_k - [gamma * zeta(k/n^2) * V'(X_k) + kappa] / n^2 + Z_{k+1}/n,
// zeta == 1 throughout when no schedule is given (the tilt kappa acts in both
// phases; only the potential flashes). Normals come from a counter-based
// generator keyed by (seed, path, step), so results are independent of
// execution order and thread count.
struct EmConfig {
  RatchetParams base;
  std::optional<FlashingSchedule> sched;
  int n = 100;
  std::int64_t total_steps = 0;
  std::int64_t paths = 1;
  std::uint64_t seed = 0;
  int threads = 0;               // 0 = hardware concurrency
  bool force_zero_noise = false; // test hook: suppresses all Z draws
};

struct SampleSet {
  std::vector<double> values;  // terminal positions, indexed by path
  EmConfig config;
};

// Discrete initial law for stationary starts; positions x_i with weights w_i
// (normalized internally). Draws use the same counter stream as the path,
// in a separate domain.
struct DiscreteInitial {
  std::vector<double> positions;
  std::vector<double> weights;

  static DiscreteInitial from_lattice(const LatticeDistribution& d);
};

// Terminal value of one trajectory.
double em_terminal(double x0, const EmConfig& cfg, std::int64_t path_index);

// Full trajectory including x0 (total_steps + 1 values).
std::vector<double> em_path(double x0, const EmConfig& cfg, std::int64_t path_index);

// cfg.paths independent trajectories from a fixed start.
SampleSet em_ensemble(double x0, const EmConfig& cfg);

// cfg.paths independent trajectories with initial positions drawn from a
// discrete law (per-path inverse-CDF draw).
SampleSet em_ensemble(const DiscreteInitial& initial, const EmConfig& cfg);

// Normalized histogram over [lo, hi) with edges aligned to multiples of
// bin_width (x = 0 is always an edge); mass outside the range is dropped from
// the normalization, so the curve integrates to the covered fraction. Nodes
// sit at bin centers. Throws std::invalid_argument on an empty sample.
DensityCurve histogram_density(const SampleSet& s, double bin_width, double lo, double hi);

}  // namespace ratchet
