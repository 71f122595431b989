#pragma once
#include <string>
#include <vector>

#include "oslash/dyadic.hpp"

namespace oslash {

// Labelled vertex of a diamond graph: a finite strictly increasing set A of
// positive integers together with a height fraction r. |A| bounds the dyadic
// level of r; the two terminals are ({}, 0) and ({}, 1).
struct VertexCode {
  std::vector<int> elems;
  Dyadic r;

  VertexCode() = default;
  VertexCode(std::vector<int> a, Dyadic rr) : elems(std::move(a)), r(rr) {}

  bool is_terminal() const { return elems.empty(); }
  bool is_bottom() const { return elems.empty() && r.num == 0; }
  bool is_top() const { return elems.empty() && r.num == 1 && r.exp == 0; }
  int min_elem() const { return elems.empty() ? 0 : elems.front(); }
  int max_elem() const { return elems.empty() ? 0 : elems.back(); }

  VertexCode prefix(int len) const {
    if (len < 0 || len > int(elems.size())) throw invariant_error("bad prefix length");
    return VertexCode(std::vector<int>(elems.begin(), elems.begin() + len), r);
  }

  // Checks the labelling discipline at depth k: A strictly increasing and
  // positive, |A| <= k, r in dyadic level |A| (terminals may sit at any level
  // up to |A|; the graphs only ever use level exactly |A| or 0).
  void validate(int k) const {
    if (int(elems.size()) > k) throw validation_error("code longer than depth");
    int prev = 0;
    for (int a : elems) {
      if (a <= prev) throw validation_error("code elements not strictly increasing positive");
      prev = a;
    }
    if (r.exp > int(elems.size()) || r < Dyadic(0) || r > Dyadic(1))
      throw validation_error("height fraction outside the level of the code");
  }

  // Width constraint of the truncated graphs: first element <= w and
  // consecutive gaps <= w.
  bool within_width(int w) const {
    int prev = 0;
    for (int a : elems) {
      if (a - prev > w) return false;
      prev = a;
    }
    return true;
  }

  std::string str() const {
    std::string s = "({";
    for (size_t i = 0; i < elems.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(elems[i]);
    }
    s += "}," + r.str() + ")";
    return s;
  }

  friend bool operator==(const VertexCode& a, const VertexCode& b) {
    return a.elems == b.elems && a.r == b.r;
  }
  friend bool operator!=(const VertexCode& a, const VertexCode& b) { return !(a == b); }
  friend bool operator<(const VertexCode& a, const VertexCode& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    if (a.elems != b.elems) return a.elems < b.elems;
    return cmp(a.r, b.r) < 0;
  }
};

// shift_in(j, A) = {j} followed by A + j; shift_out inverts it. These are the
// label halves of the canonical subdiamond identifications.
inline std::vector<int> shift_in(int j, const std::vector<int>& a) {
  std::vector<int> out;
  out.reserve(a.size() + 1);
  out.push_back(j);
  for (int x : a) out.push_back(x + j);
  return out;
}

inline std::vector<int> shift_out(int j, const std::vector<int>& a) {
  if (a.empty() || a.front() != j) throw invariant_error("shift_out: set does not start at j");
  std::vector<int> out;
  out.reserve(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) out.push_back(a[i] - j);
  return out;
}

}  // namespace oslash
