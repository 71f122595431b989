#pragma once
#include "oslash/metric.hpp"

namespace oslash {

// Cylinder over independent fair signs indexed by label sets: a finite
// conjunction of (variable, sign) constraints with distinct variables.
// Measure 2^-(number of constraints); no constraints means the whole space.
struct CylinderEvent {
  std::vector<std::pair<std::vector<int>, int>> constraints;  // sign in {-1, +1}

  Dyadic measure() const { return Dyadic(1, int(constraints.size())); }
};

// Finite union of cylinders. Measuring requires the disjointness certificate:
// every two cylinders share a variable carrying opposite signs.
struct EventSet {
  std::vector<CylinderEvent> cylinders;
  bool certified = false;
};

void certify(EventSet& s);

// The i-th branch event of a labelled vertex, defined when digit i of the
// height is 1: sign +1 on the length-i prefix, and below it -1 on 1-digit
// prefixes, +1 on 0-digit prefixes.
CylinderEvent build_T(const VertexCode& v, int i);

// Union of the branch events over all 1-digits; its measure is the height
// fraction. Terminals map to the empty set and the full space.
EventSet build_S(const VertexCode& v);

Dyadic measure(const EventSet& s);

// Exact measure of the symmetric difference by enumerating sign assignments
// of every variable either side mentions.
Dyadic symmetric_difference_measure(const EventSet& a, const EventSet& b);

// The same quantity computed structurally: independence across distinct fans,
// nesting along verticals, recursion through the subdiamond isometries within
// one fan.
Dyadic l1_delta_measure(const VertexCode& x, const VertexCode& y);

// Embedded distance 2^k * measure(S(x) symdiff S(y)), by atoms and in closed
// form; the two agree on every pair.
Dyadic l1_distance(int k, const VertexCode& x, const VertexCode& y);
Dyadic l1_distance_closed(int k, const VertexCode& x, const VertexCode& y);

}  // namespace oslash
