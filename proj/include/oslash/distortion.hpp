#pragma once
#include <functional>

#include "oslash/metric.hpp"
#include "oslash/sparse_vector.hpp"

namespace oslash {

// One extreme of the ratio ||f(x)-f(y)|| / d(x,y): the exact comparable power
// (see norm_pow) plus its float reading and the pair realizing it. Ties go to
// the lexicographically smallest pair, so reports are thread-count invariant.
struct RatioExtreme {
  Rat pow{0};
  double value = 0;
  int i = -1, j = -1;
  bool set() const { return i >= 0; }
};

struct DistortionReport {
  NormSpec norm;
  RatioExtreme lip, colip;
  bool has_classes = false;  // vertical / other split available
  RatioExtreme lip_vertical, colip_vertical, lip_other, colip_other;
  Rat distortion_pow{0};  // lip.pow / colip.pow, exact
  double distortion = 0;  // p-th root of the above
  int max_support = 0;
  bool finite = true;  // false when some pair collapses to zero
};

using PairClassifier = std::function<bool(int, int)>;  // true = vertical

// Measures the bi-Lipschitz constants of vertex images against exact graph
// distances. All comparisons run on exact rationals; floats only decorate.
DistortionReport evaluate(const std::vector<SparseVector>& images, const DistanceMatrix& dm,
                          NormSpec norm, const PairClassifier& vertical = {}, int threads = 1);

// Same measurement when the embedded distances arrive precomputed, as exact
// p-th powers (power 1 for sup/l1).
DistortionReport evaluate_powers(const std::vector<std::vector<Rat>>& dist_pow,
                                 const DistanceMatrix& dm, NormSpec norm,
                                 const PairClassifier& vertical = {}, int threads = 1);

}  // namespace oslash
