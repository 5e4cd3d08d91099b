#pragma once

#include <cstdint>
#include <string>

namespace ratchet {

// Exact rational arithmetic on int64 numerator/denominator. Used wherever
// lattice and phase bookkeeping must be exact: alpha = l/L, the flashing
// times tau1/tau2, and the step counts n^2*tau. Normalized form: den > 0,
// gcd(|num|, den) = 1. Intermediate products go through __int128; overflow
// of the reduced result throws.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(std::int64_t n) : num(n), den(1) {}

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator*(std::int64_t k) const;

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const;

  bool is_integer() const { return den == 1; }
  bool is_positive() const { return num > 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  // Remainder in [0, modulus) when *this is divided by modulus (> 0 required).
  Rational mod(const Rational& modulus) const;
};

// Parses "a/b" or a decimal literal. Decimals are accepted only when exactly
// representable with denominator <= 10^6 (at most six fractional digits);
// anything else throws std::invalid_argument.
Rational parse_rational(const std::string& text);

}  // namespace ratchet
