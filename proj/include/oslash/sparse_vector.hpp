#pragma once
#include <algorithm>
#include <cmath>
#include <vector>

#include "oslash/rational.hpp"

namespace oslash {

// Finitely supported vector with integer coordinate keys and exact rational
// entries; entries stay sorted by key and never hold an explicit zero.
struct SparseVector {
  std::vector<std::pair<int, Rat>> entries;

  void set(int key, const Rat& v) {
    if (v.is_zero()) return;
    entries.emplace_back(key, v);
  }
  void sort_keys() {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  int support() const { return int(entries.size()); }

  friend SparseVector operator-(const SparseVector& a, const SparseVector& b) {
    SparseVector out;
    size_t i = 0, j = 0;
    while (i < a.entries.size() || j < b.entries.size()) {
      if (j == b.entries.size() || (i < a.entries.size() && a.entries[i].first < b.entries[j].first)) {
        out.entries.push_back(a.entries[i++]);
      } else if (i == a.entries.size() || b.entries[j].first < a.entries[i].first) {
        out.entries.emplace_back(b.entries[j].first, -b.entries[j].second);
        ++j;
      } else {
        Rat d = a.entries[i].second - b.entries[j].second;
        if (!d.is_zero()) out.entries.emplace_back(a.entries[i].first, d);
        ++i;
        ++j;
      }
    }
    return out;
  }

  friend SparseVector operator*(const Rat& c, const SparseVector& v) {
    SparseVector out;
    if (c.is_zero()) return out;
    for (const auto& [k, x] : v.entries) out.entries.emplace_back(k, c * x);
    return out;
  }

  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries == b.entries; }
};

struct NormSpec {
  enum class Kind { sup, one, p } kind = Kind::sup;
  int p = 1;

  // exponent at which norm_pow values compare linearly
  int power() const { return kind == Kind::p ? p : 1; }
  std::string str() const {
    if (kind == Kind::sup) return "sup";
    if (kind == Kind::one) return "l1";
    return "p:" + std::to_string(p);
  }
};

inline NormSpec parse_norm(const std::string& s) {
  if (s == "sup") return {NormSpec::Kind::sup, 1};
  if (s == "l1" || s == "one") return {NormSpec::Kind::one, 1};
  if (s.rfind("p:", 0) == 0) {
    int p;
    try {
      p = std::stoi(s.substr(2));
    } catch (const std::logic_error&) {
      throw validation_error("cannot parse norm '" + s + "'");
    }
    if (p < 1 || p > 64) throw validation_error("p-norm exponent must be in 1..64");
    return {NormSpec::Kind::p, p};
  }
  throw validation_error("unknown norm '" + s + "' (want sup, l1, or p:K)");
}

// Exact comparable magnitude: the norm itself for sup and l1, the p-th power
// of the norm for p-norms (whose root is generally irrational).
inline Rat norm_pow(const SparseVector& v, NormSpec n) {
  Rat acc(0);
  for (const auto& [k, x] : v.entries) {
    Rat a = x.abs();
    switch (n.kind) {
      case NormSpec::Kind::sup:
        if (a > acc) acc = a;
        break;
      case NormSpec::Kind::one:
        acc = acc + a;
        break;
      case NormSpec::Kind::p:
        acc = acc + a.pow(n.p);
        break;
    }
  }
  return acc;
}

inline double norm_value(const SparseVector& v, NormSpec n) {
  double pw = norm_pow(v, n).to_double();
  return n.kind == NormSpec::Kind::p ? std::pow(pw, 1.0 / n.p) : pw;
}

}  // namespace oslash
