#pragma once
#include <map>

#include "oslash/bundle_graph.hpp"
#include "oslash/sparse_vector.hpp"

namespace oslash {

// Tree of label sets for depth k, branching w, one private coordinate per
// node. Nodes are ordered by (max element, lexicographic), so every node
// comes after all nodes with a smaller maximum; the root {} is index 0.
struct GoodTree {
  int k = 0, w = 0;
  std::vector<std::vector<int>> nodes;
  std::map<std::vector<int>, int> index;

  std::string coord_name(int idx) const;
};

GoodTree build_good_tree(int k, int w);

// Coefficients of the tree embedding at depth k. c(0, r) = r*2^k; deeper
// coefficients fold the height toward the nearer terminal and recurse one
// depth down. Defined for r at dyadic level m with i <= m <= k (level 0 only
// for i = 0); values lie in {0, ..., 2^k}.
struct CoefficientTable {
  int k = 0;
  std::map<std::pair<int, std::pair<i64, int>>, i64> values;

  i64 at(int i, const Dyadic& r) const;
};

CoefficientTable coefficients(int k);

// Image of one labelled vertex: the coefficient of prefix D is c(|D|, r),
// placed on D's private coordinate. Support has at most |A| + 1 entries.
SparseVector psi(int k, const VertexCode& v, const GoodTree& tree, const CoefficientTable& c);

// Reading of an image by the root coordinate functional.
Rat functional_coordinate(const SparseVector& image);

// Smallest integer p >= 1 with (1 + eps/3)^p >= 2k + 2; embedding the depth-k
// graph into that p-norm keeps the sup-norm geometry within a factor 1+eps/3.
int lp_parameter(int k, double eps);

// Images of every vertex of a labelled graph, indexed like the graph.
std::vector<SparseVector> embed_tree(const BundleGraph& g, const GoodTree& tree,
                                     const CoefficientTable& c);

}  // namespace oslash
