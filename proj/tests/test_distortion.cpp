#include "doctest.h"
#include "oslash/coded_graph.hpp"
#include "oslash/distortion.hpp"
#include "oslash/linf_embed.hpp"

using namespace oslash;

namespace {

// images of the depth-k tree embedding, the workhorse test subject
std::vector<SparseVector> tree_images(const BundleGraph& g) {
  GoodTree tree = build_good_tree(g.depth, g.branching);
  CoefficientTable c = coefficients(g.depth);
  return embed_tree(g, tree, c);
}

}  // namespace

TEST_CASE("norm machinery") {
  SparseVector v;
  v.set(0, Rat(3));
  v.set(2, Rat(-4));
  v.sort_keys();
  CHECK(norm_pow(v, parse_norm("sup")) == Rat(4));
  CHECK(norm_pow(v, parse_norm("l1")) == Rat(7));
  CHECK(norm_pow(v, parse_norm("p:2")) == Rat(25));
  CHECK(norm_value(v, parse_norm("p:2")) == doctest::Approx(5.0));
  CHECK(parse_norm("p:3").power() == 3);
  CHECK(parse_norm("sup").power() == 1);
  CHECK_THROWS_AS(parse_norm("p:0"), validation_error);
  CHECK_THROWS_AS(parse_norm("euclid"), validation_error);
}

TEST_CASE("sparse difference cancels exactly") {
  SparseVector a, b;
  a.set(1, Rat(1, 2));
  a.set(3, Rat(2));
  b.set(1, Rat(1, 2));
  b.set(2, Rat(-1));
  SparseVector d = a - b;
  REQUIRE(d.support() == 2);
  CHECK(d.entries[0] == std::make_pair(2, Rat(1)));
  CHECK(d.entries[1] == std::make_pair(3, Rat(2)));
}

TEST_CASE("evaluate and evaluate_powers agree") {
  BundleGraph g = build_coded(2, 2);
  DistanceMatrix dm = bfs_all_pairs(g);
  auto images = tree_images(g);
  for (const char* ns : {"sup", "l1", "p:3"}) {
    NormSpec norm = parse_norm(ns);
    DistortionReport direct = evaluate(images, dm, norm);
    std::vector<std::vector<Rat>> pow(g.n, std::vector<Rat>(g.n, Rat(0)));
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (i != j) pow[i][j] = norm_pow(images[i] - images[j], norm);
    DistortionReport from_pow = evaluate_powers(pow, dm, norm);
    CHECK(direct.lip.pow == from_pow.lip.pow);
    CHECK(direct.colip.pow == from_pow.colip.pow);
    CHECK(direct.distortion_pow == from_pow.distortion_pow);
    CHECK(direct.distortion == doctest::Approx(from_pow.distortion));
  }
}

TEST_CASE("distortion is scale invariant") {
  BundleGraph g = build_coded(2, 3);
  DistanceMatrix dm = bfs_all_pairs(g);
  auto images = tree_images(g);
  NormSpec norm = parse_norm("sup");
  DistortionReport base = evaluate(images, dm, norm);
  std::vector<SparseVector> scaled;
  for (const auto& v : images) scaled.push_back(Rat(3, 7) * v);
  DistortionReport s = evaluate(scaled, dm, norm);
  CHECK(s.distortion_pow == base.distortion_pow);
  CHECK(s.lip.pow == Rat(3, 7) * base.lip.pow);
  CHECK(s.colip.pow == Rat(3, 7) * base.colip.pow);
}

TEST_CASE("distortion is invariant under relabelling coordinates") {
  BundleGraph g = build_coded(2, 2);
  DistanceMatrix dm = bfs_all_pairs(g);
  auto images = tree_images(g);
  std::vector<SparseVector> moved;
  for (const auto& v : images) {
    SparseVector m;
    for (const auto& [key, val] : v.entries) m.set(1000 - key, val);
    m.sort_keys();
    moved.push_back(m);
  }
  NormSpec norm = parse_norm("l1");
  CHECK(evaluate(moved, dm, norm).distortion_pow == evaluate(images, dm, norm).distortion_pow);
}

TEST_CASE("collapsed pairs make the report infinite") {
  BundleGraph g = make_diamond_base(2);
  g.depth = 1;
  std::vector<SparseVector> images(g.n);  // everything at the origin
  DistanceMatrix dm = bfs_all_pairs(g);
  DistortionReport r = evaluate(images, dm, parse_norm("sup"));
  CHECK_FALSE(r.finite);
  CHECK(r.colip.pow == Rat(0));
}

TEST_CASE("vertical split covers every pair") {
  BundleGraph g = build_coded(2, 2);
  DistanceMatrix dm = bfs_all_pairs(g);
  auto images = tree_images(g);
  PairClassifier vertical = [&](int i, int j) {
    return vertical_by_distance(g.codes[i], g.codes[j], dm.at(i, j), g.depth);
  };
  DistortionReport r = evaluate(images, dm, parse_norm("sup"), vertical);
  REQUIRE(r.has_classes);
  // class extremes bracket the global ones
  CHECK(r.lip.pow == std::max(r.lip_vertical.pow, r.lip_other.pow));
  CHECK(r.colip.pow == std::min(r.colip_vertical.pow, r.colip_other.pow));
  // tree embedding is isometric on verticals
  CHECK(r.lip_vertical.pow == Rat(1));
  CHECK(r.colip_vertical.pow == Rat(1));
}

TEST_CASE("extreme pairs are reported lexicographically smallest") {
  BundleGraph g = make_diamond_base(2);
  g.depth = 1;
  DistanceMatrix dm = bfs_all_pairs(g);
  // two coordinates, all four vertices distinct images, several ties
  std::vector<SparseVector> images(4);
  images[1].set(0, Rat(2));
  images[2].set(0, Rat(1));
  images[3].set(1, Rat(1));
  for (auto& v : images) v.sort_keys();
  DistortionReport r1 = evaluate(images, dm, parse_norm("sup"), {}, 1);
  DistortionReport r4 = evaluate(images, dm, parse_norm("sup"), {}, 4);
  CHECK(r1.lip.i == r4.lip.i);
  CHECK(r1.lip.j == r4.lip.j);
  CHECK(r1.colip.i == r4.colip.i);
  CHECK(r1.colip.j == r4.colip.j);
  CHECK(r1.lip.pow == r4.lip.pow);
}

TEST_CASE("max support is measured over all images") {
  BundleGraph g = build_coded(3, 2);
  auto images = tree_images(g);
  DistanceMatrix dm = bfs_all_pairs(g);
  DistortionReport r = evaluate(images, dm, parse_norm("sup"));
  CHECK(r.max_support == 4);  // depth + 1
}
