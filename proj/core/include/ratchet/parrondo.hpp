#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ratchet {

// Capital-dependent games with a bias parameter eps. Game A is the simple
// walk with up-probability p = 1/2 - eps; game B uses p0 on capitals with
// mod(j, L) < l and p1 elsewhere.
struct GameSpec {
  double p = 0.5;
  double p0 = 0.5;
  double p1 = 0.5;
  int l = 1;
  int L = 3;
  double eps = 0.0;
  double rho = 0.5;

  // Builds the spec from (rho, l, L, eps); with eps = 0 the resulting
  // (p0, p1) satisfy the detailed-balance fairness identity by construction
  // (verified to 1e-12).
  static GameSpec from_rho(double rho, int l, int L, double eps);
};

struct PlaySchedule {
  enum class Kind { kSingleA, kSingleB, kMixture, kPattern };
  Kind kind = Kind::kSingleA;
  double c = 0.5;        // mixture weight on game A, strictly in (0,1)
  std::string pattern;   // nonempty word over {A, B}

  static PlaySchedule single_a() { return {Kind::kSingleA, 0.5, {}}; }
  static PlaySchedule single_b() { return {Kind::kSingleB, 0.5, {}}; }
  static PlaySchedule mixture(double c);
  static PlaySchedule from_pattern(std::string word);
};

// Up-probability of game A, 1/2 - eps; requires |eps| < 1/2.
double game_a_prob(double eps);

// (p0, p1) of game B:
//   p0 = rho^((1-alpha)/alpha) / (1 + rho^((1-alpha)/alpha)) - eps,
//   p1 = 1/(1+rho) - eps,  with alpha = l/L.
// Throws NumericalError when either leaves (0,1).
std::pair<double, double> game_b_probs(double rho, int l, int L, double eps);

struct FairnessReport {
  double log_residual;  // l*log((1-p0)/p0) + (L-l)*log((1-p1)/p1)
  bool fair;            // |log_residual| < 1e-10
};

// Detailed-balance fairness of game B: fair iff
// (1-p0)^l (1-p1)^(L-l) = p0^l p1^(L-l), tested on the log scale.
FairnessReport is_fair_B(double p0, double p1, int l, int L);

// Expected profit per play in the long run. Single games and mixtures are
// solved exactly through the stationary distribution of the capital-mod-L
// birth-death chain with wraparound: rate = sum_j pi(j) (2 q(j) - 1).
// Periodic patterns use the chain composed over one pattern period with the
// per-phase entry distributions (the paper leaves patterns open; this is the
// standard resolution). Requires L <= 64 and all effective up-probabilities
// in (0,1); throws NumericalError if the (pattern) chain is not irreducible.
double long_run_rate(const GameSpec& spec, const PlaySchedule& schedule);

}  // namespace ratchet
