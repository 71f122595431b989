#pragma once
#include "oslash/coded_graph.hpp"
#include "oslash/metric.hpp"
#include "oslash/sparse_vector.hpp"

namespace oslash {

// A 1-Lipschitz embedding of the binary coded graph into a normed space with
// exact coordinates. c is the co-Lipschitz constant: d <= c * ||delta|| on
// every pair. The norm is sup or l1 so embedded distances stay rational.
struct BaseEmbedding {
  BundleGraph graph;
  std::vector<SparseVector> images;
  NormSpec ynorm;
  Rat c{1};
  bool certified = false;
};

// Distance profiles under the sup norm: an isometric base, c = 1.
BaseEmbedding frechet_base(int k);

// Exhaustive pair check of 1-Lipschitzness, rejects collapsed pairs, and
// records the exact co-Lipschitz constant.
void certify_base(BaseEmbedding& b);

// The four canonical injections of the binary coded graph one depth down into
// the quarters of the full graph. Each is isometric onto its image; left and
// right pick the first or second midpoint label.
enum class Corner { upper_left, upper_right, lower_left, lower_right };
VertexCode corner_inject(Corner c, const VertexCode& v);

// A random variable over independent fair selector bits taking base vertex
// ids as values: table has one pool id per assignment of deps, deps sorted
// ascending, entry index reads deps[q] as bit q.
struct StepFunction {
  std::vector<int> deps;
  std::vector<int> table;

  // value under a global assignment, signs[b] in {0, 1} per bit id
  int at(const std::vector<int>& signs) const {
    size_t idx = 0;
    for (size_t q = 0; q < deps.size(); ++q) idx |= size_t(signs[deps[q]] & 1) << q;
    return table[idx];
  }
};

// The branching-w coded graph at the base depth, each vertex mapped to a step
// function valued in base vertices. Every selector bit belongs to one fan of
// one subdiamond; a vertex of depth k depends on 2^k - 1 of them.
struct TransferredEmbedding {
  BaseEmbedding base;
  BundleGraph graph;
  std::vector<StepFunction> fns;
  int bits = 0;
};

// Spreads a certified base embedding over a wider branching: per fan a fresh
// selector bit routes the whole fan into the left or right half of the base,
// recursively through the four quarters.
TransferredEmbedding transfer(const BaseEmbedding& base, int w);

// Exact E ||f - g||_Y^p over the atoms of the bits both functions mention.
// The pool matrix of p-th power distances is built once.
struct TransferEvaluator {
  int p;
  std::vector<std::vector<Rat>> delta_pow;

  TransferEvaluator(const BaseEmbedding& base, int p);
  Rat pair_pow(const StepFunction& f, const StepFunction& g) const;
};

// All-pairs matrix of exact p-th power distances, ready for the distortion
// report; diagonal zero.
std::vector<std::vector<Rat>> transfer_pair_powers(const TransferredEmbedding& emb, int p,
                                                   int threads = 1);

}  // namespace oslash
