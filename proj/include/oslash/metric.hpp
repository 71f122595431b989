#pragma once
#include <cstdint>

#include "oslash/bundle_graph.hpp"

namespace oslash {

struct DistanceMatrix {
  int n = 0;
  std::vector<int32_t> d;

  DistanceMatrix() = default;
  explicit DistanceMatrix(int nn) : n(nn), d(size_t(nn) * nn, 0) {}
  int32_t at(int i, int j) const { return d[size_t(i) * n + j]; }
  int32_t& at(int i, int j) { return d[size_t(i) * n + j]; }
};

// Exact all-pairs shortest paths by one BFS per source. Sources run
// independently, so they may be spread over threads.
DistanceMatrix bfs_all_pairs(const BundleGraph& g, int threads = 1);

// True iff a path monotone in the height fraction joins x and y. Requires a
// labelled graph.
bool vertical_path_test(const BundleGraph& g, int x, int y);

// Distance in the depth-k labelled diamond straight from the codes, by the
// part case analysis: terminal or crossing pairs resolve to height algebra,
// same-part pairs recurse one depth down through the subdiamond isometries.
// Valid for any branching whose graph contains both codes.
i64 closed_form_distance(const VertexCode& x, const VertexCode& y, int k);

// The three canonical maps from a depth-k part onto the depth-(k-1) graph:
// `down` from the lower part of fan j, `up` from the upper part, `flip` from
// the upper part reversing the vertical direction.
enum class Isometry { down, up, flip };
VertexCode isometry_apply(Isometry kind, int j, const VertexCode& v);

// Vertical pairs are exactly the pairs whose distance meets the height-gap
// lower bound.
inline bool vertical_by_distance(const VertexCode& x, const VertexCode& y, i64 dist, int k) {
  return dist == (x.r - y.r).abs().scaled(k);
}

}  // namespace oslash
