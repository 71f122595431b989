#include <cstdlib>
#include <set>

#include "doctest.h"
#include "oslash/coded_graph.hpp"
#include "oslash/isomorphism.hpp"
#include "oslash/oslash_product.hpp"

using namespace oslash;

namespace {

BundleGraph single_edge() {
  BundleGraph g;
  g.n = 2;
  g.bottom = 0;
  g.top = 1;
  g.height = 1;
  g.add_edge(0, 1);
  g.finalize();
  return g;
}

// counting oracle for edge substitution, straight from the gluing picture:
// internal vertices of G appear once per edge of H, edges multiply
void check_counts(const BundleGraph& h, const BundleGraph& g, const BundleGraph& p) {
  CHECK(p.n == h.n + int(h.edges.size()) * (g.n - 2));
  CHECK(p.edges.size() == h.edges.size() * g.edges.size());
  CHECK(p.height == h.height * g.height);
}

}  // namespace

TEST_CASE("base graphs have the advertised shape") {
  for (int w = 2; w <= 4; ++w) {
    BundleGraph d = make_diamond_base(w);
    CHECK(d.n == 2 + w);
    CHECK(int(d.edges.size()) == 2 * w);
    CHECK(d.height == 2);
    CHECK(check_bundle(d).ok);

    BundleGraph l = make_laakso_base(w);
    CHECK(l.n == 4 + w);
    CHECK(int(l.edges.size()) == 2 * w + 2);
    CHECK(l.height == 4);
    CHECK(check_bundle(l).ok);

    BundleGraph p = make_parasol_base(w);
    CHECK(p.n == 3 + w);
    CHECK(int(p.edges.size()) == 2 * w + 1);
    CHECK(p.height == 3);
    CHECK(check_bundle(p).ok);
  }
  CHECK_THROWS_AS(make_diamond_base(1), validation_error);
  CHECK_THROWS_AS(make_base("pagoda", 2), validation_error);
}

TEST_CASE("substitution multiplies counts and heights") {
  std::vector<BundleGraph> parts{make_diamond_base(2), make_diamond_base(3), make_laakso_base(2),
                                 make_parasol_base(3), single_edge()};
  for (const auto& h : parts)
    for (const auto& g : parts) {
      BundleGraph p = oslash_product(h, g);
      check_counts(h, g, p);
      CHECK(check_bundle(p).ok);
    }
}

TEST_CASE("single edge is the substitution identity") {
  BundleGraph e = single_edge();
  BundleGraph d = make_diamond_base(3);
  CHECK(check_isomorphism(oslash_product(e, d), d).ok());
  CHECK(check_isomorphism(oslash_product(d, e), d).ok());
  BundleGraph p0 = oslash_power(make_laakso_base(2), 0);
  CHECK(p0.n == 2);
  CHECK(p0.edges.size() == 1);
  CHECK(p0.height == 1);
}

TEST_CASE("substitution is associative up to isomorphism") {
  BundleGraph b = make_diamond_base(2);
  BundleGraph left = oslash_product(oslash_product(b, b), b);
  BundleGraph right = oslash_product(b, oslash_product(b, b));
  CHECK(left.n == 44);
  IsoResult iso = check_isomorphism(left, right);
  CHECK(iso.ok());

  BundleGraph lk = make_laakso_base(2);
  CHECK(check_isomorphism(oslash_product(oslash_product(lk, b), lk),
                          oslash_product(lk, oslash_product(b, lk)))
            .ok());
}

TEST_CASE("product keeps the outer graph as an index prefix") {
  BundleGraph h = make_diamond_base(2);
  BundleGraph p = oslash_product(h, make_diamond_base(2));
  // vertices of H keep their ids; distances scale by the height of G
  auto lh = h.levels();
  auto lp = p.levels();
  for (int v = 0; v < h.n; ++v) CHECK(lp[v] == 2 * lh[v]);
  CHECK(p.bottom == h.bottom);
  CHECK(p.top == h.top);
}

TEST_CASE("square of the two-branch diamond") {
  BundleGraph k22 = make_diamond_base(2);
  BundleGraph sq = oslash_product(k22, k22);
  CHECK(sq.n == 12);
  CHECK(sq.edges.size() == 16);
  CHECK(sq.height == 4);
  CHECK(check_isomorphism(sq, build_coded(2, 2)).ok());
}

TEST_CASE("coded and recursive constructions agree") {
  // |V| = 2 + sum_m w^m 2^(m-1), |E| = (2w)^k
  auto vcount = [](int k, int w) {
    long long v = 2, sets = 1, heights = 1;
    for (int m = 1; m <= k; ++m) {
      sets *= w;
      v += sets * heights;
      heights *= 2;
    }
    return v;
  };
  for (int k = 1; k <= 3; ++k)
    for (int w = 2; w <= 3; ++w) {
      BundleGraph coded = build_coded(k, w);
      CHECK(coded.n == vcount(k, w));
      long long edges = 1;
      for (int i = 0; i < k; ++i) edges *= 2 * w;
      CHECK(i64(coded.edges.size()) == edges);

      BundleSpec spec;
      spec.depth = k;
      spec.branching = w;
      BundleGraph rec = build_recursive(spec);
      IsoResult iso = check_isomorphism(coded, rec);
      REQUIRE_MESSAGE(iso.ok(), iso.witness);
      // terminal-respecting by construction
      CHECK((*iso.mapping)[coded.bottom] == rec.bottom);
      CHECK((*iso.mapping)[coded.top] == rec.top);
    }
  CHECK(build_coded(2, 3).n == 23);
  CHECK(build_coded(3, 2).n == 44);
}

TEST_CASE("recursive labelling obeys the coded discipline") {
  for (const char* fam : {"diamond"})
    for (int k = 1; k <= 3; ++k) {
      BundleSpec spec;
      spec.family = fam;
      spec.depth = k;
      spec.branching = 3;
      BundleGraph g = build_recursive(spec);
      REQUIRE(g.has_codes());
      std::set<std::string> seen;
      for (const auto& c : g.codes) {
        c.validate(k);
        CHECK(c.within_width(3));
        CHECK(seen.insert(c.str()).second);
      }
      CHECK(g.codes[g.bottom].is_bottom());
      CHECK(g.codes[g.top].is_top());
    }
}

TEST_CASE("coded graph structure") {
  int k = 3, w = 2;
  BundleGraph g = build_coded(k, w);
  auto lv = g.levels();
  for (auto [a, b] : g.edges) {
    // every edge has exactly one deepest endpoint
    bool da = int(g.codes[a].elems.size()) == k;
    bool db = int(g.codes[b].elems.size()) == k;
    CHECK(da != db);
    CHECK(std::abs(lv[a] - lv[b]) == 1);
  }
  for (int v = 0; v < g.n; ++v)
    if (int(g.codes[v].elems.size()) == k) CHECK(g.adj[v].size() == 2);
  CHECK(g.codes[0].is_bottom());
  CHECK(g.codes[1].is_top());
}

TEST_CASE("laakso and parasol powers stay bundles") {
  for (const char* fam : {"laakso", "parasol"}) {
    BundleSpec spec;
    spec.family = fam;
    spec.depth = 2;
    spec.branching = 3;
    BundleGraph g = build_recursive(spec);
    CHECK(check_bundle(g).ok);
    CHECK_FALSE(g.has_codes());
    BundleGraph base = make_base(fam, 3);
    CHECK(g.height == base.height * base.height);
  }
  BundleSpec one;
  one.family = "laakso";
  one.depth = 1;
  one.branching = 3;
  CHECK(build_recursive(one).n == 7);
}

TEST_CASE("bundle violations come with witnesses") {
  BundleGraph bad;
  bad.n = 3;
  bad.bottom = 0;
  bad.top = 1;
  bad.height = 1;
  bad.add_edge(0, 1);
  bad.add_edge(0, 2);
  bad.add_edge(2, 1);
  bad.finalize();
  BundleCheck chk = check_bundle(bad);
  CHECK_FALSE(chk.ok);
  CHECK_FALSE(chk.witness.empty());
  CHECK_THROWS_AS(require_bundle(bad, "test graph"), validation_error);

  BundleGraph flat;  // an edge inside one level
  flat.n = 4;
  flat.bottom = 0;
  flat.top = 3;
  flat.height = 2;
  flat.add_edge(0, 1);
  flat.add_edge(0, 2);
  flat.add_edge(1, 2);
  flat.add_edge(1, 3);
  flat.add_edge(2, 3);
  flat.finalize();
  CHECK_FALSE(check_bundle(flat).ok);
}

TEST_CASE("spec guards") {
  BundleSpec s;
  s.depth = 0;
  CHECK_THROWS_AS(s.validate(), validation_error);
  s.depth = 7;
  CHECK_THROWS_AS(s.validate(), validation_error);
  s.depth = 2;
  s.branching = 1;
  CHECK_THROWS_AS(s.validate(), validation_error);
  s.branching = 7;
  CHECK_THROWS_AS(s.validate(), validation_error);
  s.branching = 2;
  s.family = "pagoda";
  CHECK_THROWS_AS(s.validate(), validation_error);
  s.family = "custom-base";
  CHECK_THROWS_AS(s.validate(), validation_error);  // no base supplied
}

TEST_CASE("isomorphism rejects structurally different bundles") {
  IsoResult iso = check_isomorphism(make_diamond_base(2), make_diamond_base(3));
  CHECK_FALSE(iso.ok());
  CHECK_FALSE(iso.witness.empty());
  CHECK_FALSE(check_isomorphism(make_laakso_base(2), make_parasol_base(3)).ok());
}
