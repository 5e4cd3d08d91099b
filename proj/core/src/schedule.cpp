#include "ratchet/schedule.hpp"

#include <stdexcept>
#include <string>

namespace ratchet {

namespace {

bool square_clears(const Rational& tau, std::int64_t m) {
  return (static_cast<__int128>(m) * m * tau.num) % tau.den == 0;
}

std::int64_t exact_steps(const Rational& tau, int n) {
  __int128 v = static_cast<__int128>(n) * n * tau.num;
  if (v % tau.den != 0) {
    throw std::invalid_argument("n^2 * tau is not an integer; n must be a multiple of m");
  }
  return static_cast<std::int64_t>(v / tau.den);
}

}  // namespace

FlashingSchedule FlashingSchedule::make(const Rational& tau1, const Rational& tau2) {
  if (!tau1.is_positive() || !tau2.is_positive()) {
    throw std::invalid_argument("tau1 and tau2 must be positive");
  }
  FlashingSchedule s;
  s.tau1 = tau1;
  s.tau2 = tau2;
  constexpr std::int64_t kCap = 10'000'000;
  std::int64_t m = 1;
  while (!(square_clears(tau1, m) && square_clears(tau2, m))) {
    if (++m > kCap) throw std::invalid_argument("no feasible m below cap; tau denominators too large");
  }
  s.m = static_cast<int>(m);
  return s;
}

int FlashingSchedule::zeta(const Rational& t) const {
  if (t.num < 0) throw std::invalid_argument("zeta requires t >= 0");
  Rational r = t.mod(tau1 + tau2);
  return r < tau1 ? 0 : 1;
}

int FlashingSchedule::zeta_step(std::int64_t k, int n) const {
  std::int64_t k1 = steps_off(n);
  std::int64_t period = k1 + steps_on(n);
  std::int64_t r = k % period;
  if (r < 0) r += period;
  return r < k1 ? 0 : 1;
}

std::int64_t FlashingSchedule::steps_off(int n) const { return exact_steps(tau1, n); }

std::int64_t FlashingSchedule::steps_on(int n) const { return exact_steps(tau2, n); }

void FlashingSchedule::require_scale(int n) const {
  if (n <= 0 || n % m != 0) {
    throw std::invalid_argument("scale n=" + std::to_string(n) +
                                " must be a positive multiple of m=" + std::to_string(m));
  }
}

}  // namespace ratchet
