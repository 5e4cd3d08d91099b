#pragma once

#include <cstdint>

#include "ratchet/rational.hpp"

namespace ratchet {

// On/off schedule of the flashing potential: the potential is off for tau1,
// on for tau2, repeating. m is the smallest positive integer such that
// m^2*tau1 and m^2*tau2 are integers; lattice scales n must be multiples of m
// so that the per-phase step counts n^2*tau are exact integers.
struct FlashingSchedule {
  Rational tau1;
  Rational tau2;
  int m = 1;

  static FlashingSchedule make(const Rational& tau1, const Rational& tau2);

  // Phase indicator at time t >= 0: 0 in [0, tau1) mod (tau1+tau2), else 1.
  int zeta(const Rational& t) const;

  // zeta(k / n^2) evaluated purely in integers; n must be a multiple of m.
  int zeta_step(std::int64_t k, int n) const;

  std::int64_t steps_off(int n) const;  // n^2 * tau1
  std::int64_t steps_on(int n) const;   // n^2 * tau2
  std::int64_t steps_per_period(int n) const { return steps_off(n) + steps_on(n); }

  void require_scale(int n) const;  // throws unless n is a positive multiple of m
};

}  // namespace ratchet
