#pragma once
#include <cstdint>
#include <string>

#include "oslash/errors.hpp"

namespace oslash {

using i64 = long long;
using i128 = __int128;

namespace detail {

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i64 narrow(i128 v, const char* what) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw invariant_error(std::string("rational overflow in ") + what);
  return i64(v);
}

}  // namespace detail

// Exact rational with 64-bit numerator/denominator. Intermediate products run
// in 128 bits; a result that does not fit back into 64 bits throws instead of
// wrapping. Always normalized: den > 0, gcd(num, den) = 1.
struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) { assign(n, d); }

  void assign(i128 n, i128 d) {
    if (d == 0) throw invariant_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num = detail::narrow(n, "numerator");
    den = detail::narrow(d, "denominator");
  }

  bool is_zero() const { return num == 0; }
  int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    Rat r;
    r.assign(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
    return r;
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    Rat r;
    r.assign(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
    return r;
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    Rat r;
    r.assign(i128(a.num) * b.num, i128(a.den) * b.den);
    return r;
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw invariant_error("rational division by zero");
    Rat r;
    r.assign(i128(a.num) * b.den, i128(a.den) * b.num);
    return r;
  }
  Rat operator-() const {
    Rat r;
    r.num = -num;
    r.den = den;
    return r;
  }

  // Exact comparison via 128-bit cross multiplication; 63-bit operands cannot
  // overflow a 128-bit product.
  friend int cmp(const Rat& a, const Rat& b) {
    i128 l = i128(a.num) * b.den;
    i128 r = i128(b.num) * a.den;
    return l < r ? -1 : l > r ? 1 : 0;
  }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }

  Rat abs() const { return num < 0 ? -*this : *this; }

  Rat pow(int e) const {
    if (e < 0) throw validation_error("negative rational exponent");
    Rat acc(1);
    Rat base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = (e >>= 1) ? base * base : base;
    }
    return acc;
  }

  double to_double() const { return double(num) / double(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Parses "n" or "n/d"; the dyadic form "n/2^e" is handled by Dyadic::parse.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw validation_error("cannot parse rational '" + s + "'");
  }
}

}  // namespace oslash
