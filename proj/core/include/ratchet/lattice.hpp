#pragma once

#include <cstdint>
#include <vector>

namespace ratchet {

// A walk started from a single site only ever occupies one parity class of
// the lattice (the class flips each step); a distribution over consecutive
// sites (e.g. a lifted stationary vector) occupies both.
enum class Parity { kSingleClass, kMixed };

// Piecewise-linear density: nodes (x[i], y[i]) with x strictly increasing,
// linear in between, zero outside [x.front(), x.back()].
struct DensityCurve {
  std::vector<double> x;
  std::vector<double> y;

  double integral() const;                      // trapezoid over the nodes
  double value_at(double xq) const;             // linear interpolation
  double max_on(double lo, double hi) const;    // max over nodes with lo <= x < hi
};

// L1 distance integral |f - g| dx of two piecewise-linear curves, evaluated
// exactly on the union mesh (sign changes split segments). Total-variation
// distance between the underlying probability laws is half this.
double density_l1_distance(const DensityCurve& f, const DensityCurve& g);

// Probability vector over lattice sites j = offset, offset+1, ...,
// offset + probs.size() - 1 at spatial scale n (site j sits at x = j/n).
// Mass removed by tail truncation is accumulated in truncated_mass.
struct LatticeDistribution {
  int n = 1;
  std::int64_t offset = 0;
  std::vector<double> probs;
  Parity parity = Parity::kSingleClass;
  double truncated_mass = 0.0;

  static LatticeDistribution point_mass(int n, std::int64_t site);

  std::int64_t min_site() const { return offset; }
  std::int64_t max_site() const { return offset + static_cast<std::int64_t>(probs.size()) - 1; }
  double prob_at(std::int64_t site) const;
  double total_mass() const;  // compensated summation
  double mean_x() const;      // sum of (j/n) * P(j)

  // Drops leading/trailing sites with probability below `threshold`,
  // accumulating the dropped mass into truncated_mass.
  void trim_tails(double threshold);

  // Linear interpolation of the lattice probabilities as a density in x.
  // Occupied-class sites carry density n*P/2 for single-class distributions
  // (site spacing 2/n) and n*P for mixed ones; unoccupied-parity nodes are
  // omitted, not zeroed.
  DensityCurve to_density() const;
};

}  // namespace ratchet
