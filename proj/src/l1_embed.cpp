#include "oslash/l1_embed.hpp"

#include <algorithm>

namespace oslash {

void certify(EventSet& s) {
  for (size_t a = 0; a < s.cylinders.size(); ++a)
    for (size_t b = a + 1; b < s.cylinders.size(); ++b) {
      bool separated = false;
      for (const auto& [var1, sign1] : s.cylinders[a].constraints) {
        for (const auto& [var2, sign2] : s.cylinders[b].constraints)
          if (var1 == var2 && sign1 != sign2) {
            separated = true;
            break;
          }
        if (separated) break;
      }
      if (!separated)
        throw invariant_error("cylinders " + std::to_string(a) + " and " + std::to_string(b) +
                              " of an event set may overlap");
    }
  s.certified = true;
}

CylinderEvent build_T(const VertexCode& v, int i) {
  int n = v.r.exp;
  if (n < 1 || n > int(v.elems.size()))
    throw validation_error("branch event needs a non-terminal code at its own level");
  if (i < 1 || i > n || v.r.digit(i) != 1)
    throw validation_error("branch event index must point at a 1-digit");
  CylinderEvent t;
  for (int m = 1; m < i; ++m)
    t.constraints.emplace_back(std::vector<int>(v.elems.begin(), v.elems.begin() + m),
                               v.r.digit(m) == 1 ? -1 : +1);
  t.constraints.emplace_back(std::vector<int>(v.elems.begin(), v.elems.begin() + i), +1);
  return t;
}

EventSet build_S(const VertexCode& v) {
  EventSet s;
  if (v.is_terminal()) {
    if (v.is_top()) s.cylinders.push_back({});  // unconstrained cylinder = full space
    certify(s);
    return s;
  }
  for (int i = 1; i <= v.r.exp; ++i)
    if (v.r.digit(i) == 1) s.cylinders.push_back(build_T(v, i));
  certify(s);
  return s;
}

Dyadic measure(const EventSet& s) {
  if (!s.certified) throw invariant_error("measuring an uncertified event set");
  Dyadic total(0);
  for (const auto& c : s.cylinders) total = total + c.measure();
  return total;
}

namespace {

bool member(const EventSet& s, const std::vector<std::vector<int>>& vars, i64 mask) {
  for (const auto& c : s.cylinders) {
    bool all = true;
    for (const auto& [var, sign] : c.constraints) {
      size_t idx = std::lower_bound(vars.begin(), vars.end(), var) - vars.begin();
      int assigned = (mask >> idx) & 1 ? +1 : -1;
      if (assigned != sign) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

Dyadic symmetric_difference_measure(const EventSet& a, const EventSet& b) {
  std::vector<std::vector<int>> vars;
  for (const EventSet* s : {&a, &b})
    for (const auto& c : s->cylinders)
      for (const auto& [var, sign] : c.constraints) vars.push_back(var);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  int n = int(vars.size());
  if (n > 24) throw validation_error("symmetric difference over more than 24 variables; reduce depth");

  i64 count = 0;
  for (i64 mask = 0; mask < (i64(1) << n); ++mask)
    if (member(a, vars, mask) != member(b, vars, mask)) ++count;
  return Dyadic(count, n);
}

Dyadic l1_delta_measure(const VertexCode& x, const VertexCode& y) {
  if (x == y) return Dyadic(0);
  int jx = x.min_elem(), jy = y.min_elem();
  const Dyadic &r = x.r, &s = y.r;
  if (jx != jy || jx == 0) return r + s - (r * s).twice();  // independent events, terminals included

  Dyadic half(1, 1);
  if (r >= half && s >= half)
    return l1_delta_measure(isometry_apply(Isometry::up, jx, x), isometry_apply(Isometry::up, jx, y)).half();
  if (r <= half && s <= half)
    return l1_delta_measure(isometry_apply(Isometry::down, jx, x), isometry_apply(Isometry::down, jx, y)).half();
  return (r - s).abs();  // opposite sides of the fan vertex: nested events
}

Dyadic l1_distance(int k, const VertexCode& x, const VertexCode& y) {
  x.validate(k);
  y.validate(k);
  return symmetric_difference_measure(build_S(x), build_S(y)) * Dyadic(i64(1) << k);
}

Dyadic l1_distance_closed(int k, const VertexCode& x, const VertexCode& y) {
  x.validate(k);
  y.validate(k);
  return l1_delta_measure(x, y) * Dyadic(i64(1) << k);
}

}  // namespace oslash
