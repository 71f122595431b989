#pragma once
#include "oslash/bundle_graph.hpp"

namespace oslash {

// The two neighbours of a deepest-level vertex (|A| = k, r at level k): the
// code truncates at the last 1-digit (going down) or the last 0-digit (going
// up) strictly before position k, the height moves by 2^-k. Every edge of the
// depth-k graph has exactly one deepest endpoint, so these pairs generate the
// whole edge set.
struct UpDown {
  VertexCode up;
  VertexCode down;
};
UpDown up_down_edge(const VertexCode& v, int k);

// Depth-k labelled graph of branching w: all codes with first element <= w
// and gaps <= w, edges from the neighbour rule. Vertices are sorted by
// (|A|, A, r), which puts the bottom at index 0 and the top at index 1.
BundleGraph build_coded(int k, int w);

}  // namespace oslash
