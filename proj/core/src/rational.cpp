#include "ratchet/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ratchet {

namespace {

using Wide = __int128;

std::int64_t checked_narrow(Wide v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error(std::string("rational overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

Rational make_reduced(Wide n, Wide d, const char* what) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide a = n < 0 ? -n : n;
  Wide b = d;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  Rational r;
  r.num = checked_narrow(n / a, what);
  r.den = checked_narrow(d / a, what);
  return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  *this = make_reduced(n, d, "construction");
}

Rational Rational::operator+(const Rational& o) const {
  return make_reduced(Wide(num) * o.den + Wide(o.num) * den, Wide(den) * o.den, "+");
}

Rational Rational::operator-(const Rational& o) const {
  return make_reduced(Wide(num) * o.den - Wide(o.num) * den, Wide(den) * o.den, "-");
}

Rational Rational::operator*(const Rational& o) const {
  return make_reduced(Wide(num) * o.num, Wide(den) * o.den, "*");
}

Rational Rational::operator*(std::int64_t k) const {
  return make_reduced(Wide(num) * k, Wide(den), "*int");
}

bool Rational::operator<(const Rational& o) const {
  return Wide(num) * o.den < Wide(o.num) * den;
}

bool Rational::operator<=(const Rational& o) const {
  return Wide(num) * o.den <= Wide(o.num) * den;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::mod(const Rational& modulus) const {
  if (!modulus.is_positive()) throw std::invalid_argument("mod requires positive modulus");
  // floor((a/b) / (c/d)) = floor(a*d / (b*c)), all exact in __int128.
  Wide n = Wide(num) * modulus.den;
  Wide d = Wide(den) * modulus.num;
  Wide q = n / d;
  if (n % d != 0 && (n < 0) != (d < 0)) --q;
  Rational shift = make_reduced(Wide(modulus.num) * q, Wide(modulus.den), "mod");
  return *this - shift;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  auto parse_int = [](const std::string& s) -> std::int64_t {
    if (s.empty()) throw std::invalid_argument("empty integer in rational literal");
    size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer in rational literal: " + s);
    }
    if (pos != s.size()) throw std::invalid_argument("trailing characters in rational literal: " + s);
    return v;
  };
  if (slash != std::string::npos) {
    std::int64_t n = parse_int(text.substr(0, slash));
    std::int64_t d = parse_int(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    return Rational(parse_int(text));
  }
  std::string whole = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  if (frac.size() > 6) {
    throw std::invalid_argument("decimal needs denominator > 10^6, pass a fraction instead: " + text);
  }
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bad decimal literal: " + text);
    }
  }
  bool negative = !whole.empty() && whole[0] == '-';
  std::int64_t w = whole.empty() || whole == "-" || whole == "+" ? 0 : parse_int(whole);
  std::int64_t den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::int64_t f = frac.empty() ? 0 : parse_int(frac);
  std::int64_t n = (negative ? -1 : 1) * (std::abs(w) * den + f);
  if (whole.empty() || whole == "+") n = std::abs(w) * den + f;
  return Rational(n, den);
}

}  // namespace ratchet
