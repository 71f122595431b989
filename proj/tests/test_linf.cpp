#include <map>

#include "doctest.h"
#include "oslash/coded_graph.hpp"
#include "oslash/distortion.hpp"
#include "oslash/linf_embed.hpp"

using namespace oslash;

namespace {

// independent recomputation: fold the height toward the nearer terminal and
// drop one depth per prefix step
i64 coef_oracle(int k, int i, Dyadic r) {
  if (i == 0) return r.scaled(k);
  Dyadic fold = r <= Dyadic(1, 1) ? r.twice() : (Dyadic(1) - r).twice();
  return coef_oracle(k - 1, i - 1, fold);
}

std::map<std::vector<int>, Rat> by_label(const SparseVector& v, const GoodTree& tree) {
  std::map<std::vector<int>, Rat> out;
  for (const auto& [key, val] : v.entries) out[tree.nodes[key]] = val;
  return out;
}

}  // namespace

TEST_CASE("good tree enumerates the admissible label sets") {
  GoodTree t = build_good_tree(2, 2);
  REQUIRE(t.nodes.size() == 7);  // {}, {1}, {2}, {1,2}, {1,3}, {2,3}, {2,4}
  CHECK(t.nodes[0].empty());
  CHECK(t.index.at({}) == 0);
  for (const auto& a : t.nodes) {
    VertexCode probe(a, Dyadic(0));
    CHECK(probe.within_width(2));
    CHECK(int(a.size()) <= 2);
  }
  // every node's parent prefix is present
  for (const auto& a : t.nodes)
    if (!a.empty()) CHECK(t.index.count(std::vector<int>(a.begin(), a.end() - 1)));
  CHECK(t.coord_name(0) != t.coord_name(3));
}

TEST_CASE("coefficient table matches the recursion oracle") {
  for (int k = 1; k <= 4; ++k) {
    CoefficientTable c = coefficients(k);
    CHECK(c.at(0, Dyadic(0)) == 0);
    CHECK(c.at(0, Dyadic(1)) == (i64(1) << k));
    for (int m = 1; m <= k; ++m)
      for (i64 num = 1; num < (i64(1) << m); num += 2) {
        Dyadic r(num, m);
        for (int i = 0; i <= m; ++i) {
          i64 want = coef_oracle(k, i, r);
          CHECK(c.at(i, r) == want);
          CHECK(want >= 0);
          CHECK(want <= (i64(1) << k));
        }
      }
  }
  CHECK(coefficients(1).at(1, Dyadic(1, 1)) == 1);
}

TEST_CASE("images sit on the prefix chain") {
  int k = 3, w = 2;
  BundleGraph g = build_coded(k, w);
  GoodTree tree = build_good_tree(k, w);
  CoefficientTable c = coefficients(k);
  for (int v = 0; v < g.n; ++v) {
    SparseVector img = psi(k, g.codes[v], tree, c);
    CHECK(img.support() <= int(g.codes[v].elems.size()) + 1);
    CHECK(img.support() <= k + 1);
    auto labelled = by_label(img, tree);
    for (const auto& [label, val] : labelled) {
      // support labels are prefixes of the vertex code
      REQUIRE(label.size() <= g.codes[v].elems.size());
      CHECK(std::equal(label.begin(), label.end(), g.codes[v].elems.begin()));
      CHECK(val == Rat(coef_oracle(k, int(label.size()), g.codes[v].r)));
    }
    CHECK(functional_coordinate(img) == g.codes[v].r.to_rat() * Rat(i64(1) << k));
  }
}

TEST_CASE("deeper tables restrict to twice the shallower ones") {
  int w = 3;
  for (int k = 2; k <= 4; ++k) {
    BundleGraph shallow = build_coded(k - 1, w);
    GoodTree tdeep = build_good_tree(k, w), tshallow = build_good_tree(k - 1, w);
    CoefficientTable cdeep = coefficients(k), cshallow = coefficients(k - 1);
    for (const auto& code : shallow.codes) {
      auto deep = by_label(psi(k, code, tdeep, cdeep), tdeep);
      auto twice = by_label(Rat(2) * psi(k - 1, code, tshallow, cshallow), tshallow);
      CHECK(deep == twice);
    }
  }
}

TEST_CASE("sup distortion of the tree embedding") {
  // depth 2, branching 3: the extremes are known exactly
  BundleGraph g = build_coded(2, 3);
  DistanceMatrix dm = bfs_all_pairs(g);
  auto images = embed_tree(g, build_good_tree(2, 3), coefficients(2));
  PairClassifier vertical = [&](int i, int j) {
    return vertical_by_distance(g.codes[i], g.codes[j], dm.at(i, j), g.depth);
  };
  DistortionReport r = evaluate(images, dm, parse_norm("sup"), vertical);
  REQUIRE(r.finite);
  CHECK(r.lip.pow == Rat(1));
  CHECK(r.colip.pow == Rat(1, 2));
  CHECK(r.distortion_pow == Rat(2));
  CHECK(r.lip_vertical.pow == Rat(1));
  CHECK(r.colip_vertical.pow == Rat(1));

  // stays within the guaranteed factor 3 across the small range
  for (int k = 1; k <= 3; ++k)
    for (int w = 2; w <= 3; ++w) {
      BundleGraph gg = build_coded(k, w);
      DistanceMatrix dd = bfs_all_pairs(gg);
      auto im = embed_tree(gg, build_good_tree(k, w), coefficients(k));
      DistortionReport rr = evaluate(im, dd, parse_norm("sup"));
      REQUIRE(rr.finite);
      CHECK(rr.distortion_pow <= Rat(3));
      CHECK(rr.lip.pow <= Rat(1));
    }
}

TEST_CASE("lp reading exponent") {
  CHECK(lp_parameter(3, 0.6) == 12);
  CHECK(lp_parameter(2, 0.6) == 10);
  for (int k = 1; k <= 5; ++k)
    for (double eps : {0.3, 0.6, 1.0}) {
      int p = lp_parameter(k, eps);
      CHECK(std::pow(1 + eps / 3, p) >= 2 * k + 2 - 1e-9);
      if (p > 1) CHECK(std::pow(1 + eps / 3, p - 1) < 2 * k + 2);
    }
  CHECK_THROWS_AS(lp_parameter(3, 0.0), validation_error);
  CHECK_THROWS_AS(lp_parameter(3, -1.0), validation_error);
}

TEST_CASE("lp reading keeps the distortion near the sup value") {
  BundleGraph g = build_coded(2, 3);
  DistanceMatrix dm = bfs_all_pairs(g);
  auto images = embed_tree(g, build_good_tree(2, 3), coefficients(2));
  int p = lp_parameter(2, 0.6);
  NormSpec norm{NormSpec::Kind::p, p};
  DistortionReport r = evaluate(images, dm, norm);
  REQUIRE(r.finite);
  // sup reading is 2; the p-norm reading pays at most the support factor
  CHECK(r.distortion <= 2 * (1 + 0.6 / 3) + 1e-9);
  CHECK(r.lip.pow <= Rat(2 * 2 + 2));  // lip^p bounded by the support count
  CHECK(r.distortion >= 1.0);
}

TEST_CASE("embed_tree requires matching labels") {
  BundleGraph plain = make_laakso_base(2);
  CHECK_THROWS_AS(embed_tree(plain, build_good_tree(1, 2), coefficients(1)), validation_error);
  // a tree too narrow for the graph misses nodes
  BundleGraph wide = build_coded(2, 3);
  CHECK_THROWS_AS(embed_tree(wide, build_good_tree(2, 2), coefficients(2)), validation_error);
}
