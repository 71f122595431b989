#pragma once
#include <cstdint>

#include "oslash/distortion.hpp"

namespace oslash {

// Modulus of asymptotic midpoint uniform convexity, delta(t) for t in (0, 1].
// power is gamma * t^p; lp_exact is (1 + t^p)^(1/p) - 1; table reads the
// value at the largest grid point <= t (zero below the grid), which never
// overstates a nondecreasing modulus.
struct ModulusSpec {
  enum class Kind { power, lp_exact, table } kind = Kind::power;
  double gamma = 1.0;
  double p = 2.0;
  std::vector<std::pair<double, double>> grid;  // (t, delta), t increasing

  void validate() const;
  double value(double t) const;

  // largest g with delta(t) >= g * t^p certified on (0, 1]; feeds the floor
  double effective_gamma() const;
};

// Approximate barycenter set: z belongs to Bar_lambda(x, y, delta) when
// d(x,z) <= lambda * s and d(z,y) <= (1 - lambda) * s for s = (1 + delta)
// d(x,y). The midpoint set is lambda = 1/2. Exact under every NormSpec since
// p-norms compare through p-th powers.
bool bar_membership(const SparseVector& x, const SparseVector& y, const SparseVector& z,
                    const Rat& lambda, const Rat& delta, NormSpec norm);

// Float variant in l_p^dim for fractional p; bar_ratio is the larger of the
// two constraint ratios, membership means <= 1.
double bar_ratio(const std::vector<double>& a, const std::vector<double>& b,
                 const std::vector<double>& z, double lambda, double delta, double p);
bool in_bar(const std::vector<double>& a, const std::vector<double>& b,
            const std::vector<double>& z, double lambda, double delta, double p);

// Randomized containment check of the barycenter-to-midpoint inclusion: every
// sampled z lying strictly inside Bar_lambda(-lambda x, (1-lambda) x, delta)
// must lie in Mid(-mu x, mu x, delta), mu = max(lambda, 1 - lambda). Both
// sides carry a relative guard band so float ties never count.
struct Lemma51Stats {
  long long samples = 0;
  long long in_bar = 0;
  long long violations = 0;
  double worst_margin = 0;  // largest relative midpoint excess among violations
};
Lemma51Stats check_lemma51(int dim, double p, long long samples, uint64_t seed, int threads = 1);

// Fan level of a bundle graph: the level holding the largest class (>= 3) of
// vertices with identical neighbourhoods, ties toward the level with most
// vertices and then the smallest level. rho is the larger distance from the
// fan level to a terminal.
struct FanLevel {
  int level = 0;
  int rho = 0;
};
FanLevel compute_rho(const BundleGraph& g);

// C_k series: C_1 = c1, then the smallest C >= C_{k-1} with
// C (1 - delta(1 / (9 rho C)) / 5) >= C_{k-1}, found by bisection since the
// left side increases in C. floor_at is the closed-form envelope
// (effective_gamma / (5 (9 rho)^p) * (k - 1))^(1/p) the series dominates.
struct BoundCurve {
  double p = 2;
  double gamma = 1;  // effective power-law coefficient behind the floor
  double rho = 1;
  double c1 = 1;
  double bigk = 0;  // gamma / (5 (9 rho)^p)
  std::vector<double> c;  // c[i] is C_{i+1}
  std::vector<double> floor_at;
};
BoundCurve lower_bound_curve(const ModulusSpec& mod, double rho, int kmax, double c1 = 1.0);

// Restriction of an embedding of `deep` to the canonical copy of `shallow`
// inside it: by code match for labelled graphs, by index prefix for the
// recursive families. Verifies the copy is a scaled isometric subgraph, then
// reports distortion before (all of deep) and after (subset pairs only);
// dropping pairs can only shrink the ratio spread.
struct Restriction {
  std::vector<int> subset;  // shallow id -> deep id
  i64 scale = 1;
  std::vector<SparseVector> images;          // restricted images (image variant)
  std::vector<std::vector<Rat>> dist_pow;    // restricted pair powers (powers variant)
  DistortionReport before, after;
};
Restriction self_improve_restrict(const BundleGraph& deep, const std::vector<SparseVector>& images,
                                  const BundleGraph& shallow, NormSpec norm, int threads = 1);
Restriction self_improve_restrict_powers(const BundleGraph& deep,
                                         const std::vector<std::vector<Rat>>& dist_pow,
                                         const BundleGraph& shallow, NormSpec norm,
                                         int threads = 1);

}  // namespace oslash
