#pragma once
#include <string>

#include "oslash/rational.hpp"

namespace oslash {

// Dyadic rational num / 2^exp. Canonical form: num odd, or num = 0 with
// exp = 0. Closed under +, -, * and halving, which is all the label
// arithmetic ever needs; compare and convert are exact.
struct Dyadic {
  i64 num = 0;
  int exp = 0;

  Dyadic() = default;
  Dyadic(i64 n) : num(n), exp(0) {}
  Dyadic(i64 n, int e) : num(n), exp(e) { canonicalize(); }

  void canonicalize() {
    if (exp < 0) throw invariant_error("dyadic with negative exponent");
    if (num == 0) {
      exp = 0;
      return;
    }
    while (exp > 0 && (num & 1) == 0) {
      num >>= 1;
      --exp;
    }
  }

  static i64 shl_checked(i64 v, int by) {
    i128 r = i128(v) << by;
    return detail::narrow(r, "dyadic shift");
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    int e = a.exp > b.exp ? a.exp : b.exp;
    i64 n = shl_checked(a.num, e - a.exp) + shl_checked(b.num, e - b.exp);
    return Dyadic(n, e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(detail::narrow(i128(a.num) * b.num, "dyadic product"), a.exp + b.exp);
  }
  Dyadic operator-() const {
    Dyadic d;
    d.num = -num;
    d.exp = exp;
    return d;
  }

  Dyadic half() const { return Dyadic(num, exp + 1); }
  Dyadic twice() const { return exp > 0 ? Dyadic(num, exp - 1) : Dyadic(shl_checked(num, 1), 0); }
  Dyadic abs() const { return num < 0 ? -*this : *this; }

  friend int cmp(const Dyadic& a, const Dyadic& b) {
    int e = a.exp > b.exp ? a.exp : b.exp;
    i128 l = i128(a.num) << (e - a.exp);
    i128 r = i128(b.num) << (e - b.exp);
    return l < r ? -1 : l > r ? 1 : 0;
  }
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.num == b.num && a.exp == b.exp; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

  // True iff the value is an odd multiple of 2^-k inside (0,1), i.e. lies in
  // the k-th dyadic level; level 0 is {0, 1}.
  bool in_level(int k) const {
    if (k == 0) return exp == 0 && (num == 0 || num == 1);
    return exp == k && num >= 1 && num <= (i64(1) << k) - 1;
  }

  // Binary digits of a canonical value in [0,1): digit(i) is the coefficient
  // of 2^-i, 1 <= i <= exp. The last digit of a nonzero value is always 1.
  int digit(int i) const {
    if (i < 1 || i > exp) throw invariant_error("dyadic digit index out of range");
    return int((num >> (exp - i)) & 1);
  }

  // Integer value of d * 2^k; requires exp <= k.
  i64 scaled(int k) const {
    if (exp > k) throw invariant_error("dyadic not integral at requested scale");
    return shl_checked(num, k - exp);
  }

  Rat to_rat() const { return Rat(num, i64(1) << exp); }
  double to_double() const { return double(num) / double(i64(1) << exp); }

  std::string str() const {
    if (exp == 0) return std::to_string(num);
    return std::to_string(num) + "/2^" + std::to_string(exp);
  }
};

inline Dyadic parse_dyadic(const std::string& s) {
  auto pos = s.find("/2^");
  try {
    if (pos == std::string::npos) return Dyadic(std::stoll(s));
    return Dyadic(std::stoll(s.substr(0, pos)), std::stoi(s.substr(pos + 3)));
  } catch (const std::logic_error&) {
    throw validation_error("cannot parse dyadic '" + s + "'");
  }
}

}  // namespace oslash
