#pragma once
#include "oslash/bundle_graph.hpp"

namespace oslash {

// Edge substitution H (.) G: every edge of H, oriented upward by level, is
// replaced by a copy of G glued bottom-to-lower-endpoint, top-to-upper.
// Vertex layout of the result, which callers may rely on:
//   indices [0, |V(H)|)                      the vertices of H, unchanged;
//   index   |V(H)| + e * |internal(G)| + m   copy m of G's internal vertex
//                                            list (sorted by index) sitting on
//                                            the e-th edge of H (sorted order).
// Heights multiply. Both inputs must be bundles.
BundleGraph oslash_product(const BundleGraph& h, const BundleGraph& g);

// k-fold substitution power; k = 0 yields the two-vertex single edge.
BundleGraph oslash_power(const BundleGraph& g, int k);

// Builds the depth-k truncated graph of a family by iterated substitution
// with its base. Diamond-family results carry vertex codes assigned by the
// inductive labelling of substituted midpoints.
BundleGraph build_recursive(const BundleSpec& spec);

}  // namespace oslash
