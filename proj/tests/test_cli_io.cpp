#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include "doctest.h"
#include "oslash/coded_graph.hpp"
#include "oslash/graph_io.hpp"
#include "oslash/oslash_product.hpp"
#include "oslash/linf_embed.hpp"
#include "oslash/lp_transfer.hpp"
#include "oslash/report.hpp"

using namespace oslash;

namespace {

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("rational json keeps dyadic denominators explicit") {
  json dj = rational_json(Rat(3, 8));
  CHECK(dj.contains("exp"));
  CHECK(rational_from_json(dj) == Rat(3, 8));
  json rj = rational_json(Rat(-2, 3));
  CHECK(rj.contains("den"));
  CHECK(rational_from_json(rj) == Rat(-2, 3));
  CHECK(rational_from_json(rational_json(Rat(7))) == Rat(7));
  CHECK_THROWS_AS(rational_from_json(json{{"den", 2}}), validation_error);
  CHECK_THROWS_AS(rational_from_json(json{{"num", 1}, {"exp", 70}}), validation_error);
}

TEST_CASE("rational csv spellings") {
  CHECK(rational_csv(Rat(5)) == "5");
  CHECK(rational_csv(Rat(3, 4)) == "3/2^2");
  CHECK(rational_csv(Rat(2, 3)) == "2/3");
  for (const Rat& r : {Rat(0), Rat(-7), Rat(9, 16), Rat(-5, 6), Rat(22, 7)})
    CHECK(rational_from_csv(rational_csv(r)) == r);
  CHECK_THROWS_AS(rational_from_csv("1/2^x"), validation_error);
  CHECK_THROWS_AS(rational_from_csv(""), validation_error);
}

TEST_CASE("graphs round-trip through json") {
  for (int w : {2, 3}) {
    BundleGraph g = build_coded(2, w);
    BundleGraph back = graph_from_json(graph_json(g));
    CHECK(back.n == g.n);
    CHECK(back.edges == g.edges);
    CHECK(back.bottom == g.bottom);
    CHECK(back.top == g.top);
    CHECK(back.height == g.height);
    CHECK(back.family == g.family);
    CHECK(back.depth == g.depth);
    CHECK(back.branching == g.branching);
    REQUIRE(back.has_codes());
    for (int v = 0; v < g.n; ++v) CHECK(back.codes[v] == g.codes[v]);
  }
  BundleSpec spec;
  spec.family = "parasol";
  spec.depth = 2;
  spec.branching = 3;
  BundleGraph p = build_recursive(spec);
  BundleGraph back = graph_from_json(graph_json(p));
  CHECK_FALSE(back.has_codes());
  CHECK(back.edges == p.edges);
}

TEST_CASE("graph loading validates structure") {
  json j = graph_json(build_coded(1, 2));
  json bad = j;
  bad["top"] = 0;  // terminals collide
  CHECK_THROWS_AS(graph_from_json(bad), validation_error);
  bad = j;
  bad["height"] = 7;
  CHECK_THROWS_AS(graph_from_json(bad), validation_error);
  bad = j;
  bad["edges"].push_back(json::array({0, 99}));
  CHECK_THROWS_AS(graph_from_json(bad), validation_error);
  bad = j;
  bad["vertices"][2]["A"] = json::array({3, 1});
  CHECK_THROWS_AS(graph_from_json(bad), validation_error);
  bad = j;
  bad["vertices"][1].erase("A");  // codes must be all or none
  CHECK_THROWS_AS(graph_from_json(bad), validation_error);
  bad = j;
  bad.erase("edges");
  CHECK_THROWS_AS(graph_from_json(bad), validation_error);
}

TEST_CASE("atomic writes land whole") {
  std::string path = tmp_path("oslash_io_test.txt");
  write_text_atomic(path, "first\n");
  CHECK(read_text(path) == "first\n");
  write_text_atomic(path, "second\n");
  CHECK(read_text(path) == "second\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_text(path), validation_error);
  CHECK_THROWS_AS(write_text_atomic("/nonexistent-dir/x/y.txt", "z"), validation_error);
}

TEST_CASE("save and load through files") {
  std::string path = tmp_path("oslash_graph_test.json");
  BundleGraph g = build_coded(2, 2);
  save_graph(g, path);
  BundleGraph back = load_graph(path);
  CHECK(back.n == g.n);
  CHECK(back.codes == g.codes);
  // byte-identical rewrite
  std::string first = read_text(path);
  save_graph(build_coded(2, 2), path);
  CHECK(read_text(path) == first);
  std::filesystem::remove(path);
}

TEST_CASE("distance and matrix csv") {
  BundleGraph g = build_coded(1, 2);
  DistanceMatrix dm = bfs_all_pairs(g);
  std::string csv = dist_csv(dm);
  CHECK(csv.rfind("id,0,1,2,3", 0) == 0);
  CHECK(csv.find("\n0,0,2,1,1\n") != std::string::npos);

  std::vector<std::vector<Rat>> m{{Rat(0), Rat(1, 2)}, {Rat(1, 2), Rat(0)}};
  std::vector<std::vector<Rat>> back = matrix_from_csv(matrix_csv(m));
  CHECK(back == m);
  CHECK_THROWS_AS(matrix_from_csv("id,0\n1,0\n"), validation_error);
  CHECK_THROWS_AS(matrix_from_csv(""), validation_error);
}

TEST_CASE("pair csv round-trips exact powers") {
  TransferredEmbedding emb = transfer(frechet_base(1), 3);
  std::vector<std::vector<Rat>> pow = transfer_pair_powers(emb, 2);
  std::string csv = pairs_csv(pow, 2);
  CHECK(csv.rfind("i,j,p,pow,dist", 0) == 0);
  LoadedPairs lp = pairs_from_csv(csv);
  CHECK(lp.p == 2);
  CHECK(lp.pow == pow);
  // rewriting is byte-identical
  CHECK(pairs_csv(lp.pow, lp.p) == csv);

  CHECK_THROWS_AS(pairs_from_csv("i,j,pow\n"), validation_error);
  CHECK_THROWS_AS(pairs_from_csv("i,j,p,pow,dist\n0,1,2,4,2\n0,1,3,8,2\n"), validation_error);
  CHECK_THROWS_AS(pairs_from_csv("i,j,p,pow,dist\n1,0,2,4,2\n"), validation_error);
  // a missing pair leaves the matrix incomplete
  std::string truncated = csv.substr(0, csv.rfind('\n', csv.size() - 2) + 1);
  CHECK_THROWS_AS(pairs_from_csv(truncated), validation_error);
}

TEST_CASE("embeddings round-trip with their metadata") {
  BundleGraph g = build_coded(2, 2);
  GoodTree tree = build_good_tree(2, 2);
  auto images = embed_tree(g, tree, coefficients(2));
  std::vector<std::string> names(tree.nodes.size());
  for (size_t i = 0; i < names.size(); ++i) names[i] = tree.coord_name(int(i));
  json meta{{"target", "c0"}, {"depth", 2}};
  json j = embedding_json(images, names, meta);
  LoadedEmbedding back = embedding_from_json(j, g.n);
  CHECK(back.meta.at("target") == "c0");
  REQUIRE(int(back.images.size()) == g.n);

  // coordinates may be re-keyed, so compare name -> value maps
  for (int v = 0; v < g.n; ++v) {
    std::map<std::string, Rat> want, got;
    for (const auto& [key, val] : images[v].entries) want[names[key]] = val;
    for (const auto& [key, val] : back.images[v].entries) got[back.coord_names[key]] = val;
    CHECK(want == got);
  }

  json bad = j;
  bad.erase("3");
  CHECK_THROWS_AS(embedding_from_json(bad, g.n), validation_error);
  bad = j;
  bad["999"] = json::object();
  CHECK_THROWS_AS(embedding_from_json(bad, g.n), validation_error);
}

TEST_CASE("curves round-trip through csv") {
  ModulusSpec mod;
  BoundCurve c = lower_bound_curve(mod, 2.0, 12);
  std::string csv = curve_csv(c);
  CHECK(csv.rfind("k,c,floor", 0) == 0);
  BoundCurve back = curve_from_csv(csv);
  REQUIRE(back.c.size() == c.c.size());
  for (size_t i = 0; i < c.c.size(); ++i) {
    CHECK(back.c[i] == c.c[i]);  // %.17g survives the round trip
    CHECK(back.floor_at[i] == c.floor_at[i]);
  }
  CHECK_THROWS_AS(curve_from_csv("k,c\n1,1\n"), validation_error);
  CHECK_THROWS_AS(curve_from_csv("k,c,floor\n2,1,0\n"), validation_error);
}

TEST_CASE("report rows and bounds") {
  BundleGraph g = build_coded(2, 2);
  DistanceMatrix dm = bfs_all_pairs(g);
  auto images = embed_tree(g, build_good_tree(2, 2), coefficients(2));
  DistortionReport rep = evaluate(images, dm, parse_norm("sup"));
  json config{{"family", "diamond"}, {"depth", 2}, {"branching", 2}, {"target", "c0"},
              {"norm", "sup"}};
  json j = report_json(rep, config, upper_bound_for("c0", parse_norm("sup"), 2));
  ReportRow row = report_row(j);
  CHECK(row.family == "diamond");
  CHECK(row.depth == 2);
  CHECK(row.target == "c0");
  CHECK(row.norm == "sup");
  CHECK(row.measured == doctest::Approx(rep.distortion));
  CHECK(row.upper == 3.0);
  CHECK_THROWS_AS(report_row(json{{"norm", "sup"}}), validation_error);

  CHECK(upper_bound_for("lp", parse_norm("p:12"), 3) == doctest::Approx(3.0 * std::pow(8.0, 1.0 / 12)));
  CHECK(upper_bound_for("lp", parse_norm("p:12"), 3) <= 3.6);
  CHECK(upper_bound_for("l1", parse_norm("l1"), 2) == 2.0);
  CHECK(upper_bound_for("l1", parse_norm("sup"), 2) == 0.0);
  CHECK(upper_bound_for("transfer", parse_norm("p:2"), 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(upper_bound_for("transfer", parse_norm("p:2"), 2, 1.5) == doctest::Approx(1.5 * std::sqrt(2.0)));
  CHECK(upper_bound_for("custom", parse_norm("sup"), 2) == 0.0);
}

namespace {

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

TEST_CASE("report assembly groups by norm and joins curves") {
  ReportRow a;
  a.family = "diamond";
  a.depth = 3;
  a.branching = 2;
  a.target = "c0";
  a.norm = "sup";
  a.measured = 2.0;
  a.upper = 3.0;
  ReportRow b = a;
  b.depth = 2;
  b.target = "transfer";
  b.norm = "p:2";
  b.measured = 1.41;
  b.upper = 1.41;
  ReportRow c = a;
  c.depth = 1;
  c.target = "custom";
  c.finite = false;
  c.measured = 0.0;
  c.upper = 0.0;
  NamedCurve nc;
  nc.p = 2;
  nc.curve = lower_bound_curve(ModulusSpec{}, 1.0, 5);

  std::string md = report_markdown({a, b, c}, {nc});
  CHECK(md.rfind("# Distortion report\n", 0) == 0);
  // sections sort by norm, rows inside by target
  size_t at_p2 = md.find("## norm p:2");
  size_t at_sup = md.find("## norm sup");
  REQUIRE(at_p2 != std::string::npos);
  REQUIRE(at_sup != std::string::npos);
  CHECK(at_p2 < at_sup);
  CHECK(md.find("| diamond | 2 | 3 | c0 | 2 | 3 | - | - |") != std::string::npos);
  CHECK(md.find("| diamond | 2 | 1 | custom | inf | - | - | - |") != std::string::npos);
  std::string joined = "| diamond | 2 | 2 | transfer | 1.41 | 1.41 | " +
                       fmt6(nc.curve.c[1]) + " | " + fmt6(nc.curve.floor_at[1]) + " |";
  CHECK(md.find(joined) != std::string::npos);

  std::string csv = report_table_csv({a, b, c}, {nc});
  CHECK(csv.rfind("family,branching,depth,target,norm,measured,upper,lower_curve,floor\n", 0) == 0);
  CHECK(csv.find("diamond,2,2,transfer,p:2,1.41,1.41," + fmt6(nc.curve.c[1]) + "," +
                 fmt6(nc.curve.floor_at[1]) + "\n") != std::string::npos);
  CHECK(csv.find("diamond,2,1,custom,sup,inf,,,\n") != std::string::npos);

  CHECK(report_markdown({}, {}).find("(no measurements)") != std::string::npos);
}
