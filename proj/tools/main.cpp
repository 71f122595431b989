#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "oslash/coded_graph.hpp"
#include "oslash/graph_io.hpp"
#include "oslash/isomorphism.hpp"
#include "oslash/l1_embed.hpp"
#include "oslash/linf_embed.hpp"
#include "oslash/lp_transfer.hpp"
#include "oslash/oslash_product.hpp"
#include "oslash/report.hpp"
#include "oslash/worker.hpp"

namespace {

using namespace oslash;

void fail_json(const char* kind, const std::string& message) {
  json j{{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

BundleGraph load_labelled(const std::string& path) {
  BundleGraph g = load_graph(path);
  if (!g.has_codes())
    throw validation_error("'" + path + "' carries no vertex codes; build a diamond graph");
  return g;
}

PairClassifier vertical_classifier(const BundleGraph& g, const DistanceMatrix& dm) {
  if (!g.has_codes() || g.family != "diamond") return {};
  return [&g, &dm](int i, int j) {
    return vertical_by_distance(g.codes[i], g.codes[j], dm.at(i, j), g.depth);
  };
}

int run_build(const std::string& family, int depth, int branch, const std::string& mode,
              const std::string& out) {
  BundleSpec spec;
  spec.family = family;
  spec.depth = depth;
  spec.branching = branch;
  spec.validate();
  BundleGraph g;
  if (mode == "coded") {
    if (family != "diamond") throw validation_error("coded mode exists only for the diamond family");
    g = build_coded(depth, branch);
  } else {
    g = build_recursive(spec);
  }
  save_graph(g, out);
  std::cout << "vertices=" << g.n << " edges=" << g.edges.size() << " height=" << g.height
            << " -> " << out << "\n";
  return 0;
}

int run_verify_iso(int depth, int branch) {
  BundleSpec spec;
  spec.depth = depth;
  spec.branching = branch;
  spec.validate();
  BundleGraph coded = build_coded(depth, branch);
  BundleGraph recursive = build_recursive(spec);
  IsoResult iso = check_isomorphism(coded, recursive);
  if (!iso.ok()) throw invariant_error("constructions differ: " + iso.witness);
  std::cout << "isomorphic: depth=" << depth << " branch=" << branch << " vertices=" << coded.n
            << "\n";
  return 0;
}

int run_dist(const std::string& graph_path, const std::string& method, const std::string& out,
             int threads) {
  BundleGraph g = load_graph(graph_path);
  DistanceMatrix dm;
  if (method == "bfs") {
    dm = bfs_all_pairs(g, threads);
  } else {
    if (!g.has_codes() || g.family != "diamond")
      throw validation_error("closed-form distances need a labelled diamond graph");
    dm = DistanceMatrix(g.n);
    for (int i = 0; i < g.n; ++i)
      for (int j = i + 1; j < g.n; ++j) {
        i64 d = closed_form_distance(g.codes[i], g.codes[j], g.depth);
        dm.at(i, j) = int32_t(d);
        dm.at(j, i) = int32_t(d);
      }
  }
  write_text_atomic(out, dist_csv(dm));
  std::cout << "distances " << dm.n << "x" << dm.n << " -> " << out << "\n";
  return 0;
}

int run_embed(const std::string& target, const std::string& graph_path, int p, double eps,
              const std::string& base_spec, const std::string& out, int threads) {
  BundleGraph g = load_labelled(graph_path);

  if (target == "c0" || target == "lp") {
    GoodTree tree = build_good_tree(g.depth, g.branching);
    CoefficientTable c = coefficients(g.depth);
    std::vector<SparseVector> images = embed_tree(g, tree, c);
    std::vector<std::string> names(tree.nodes.size());
    for (size_t i = 0; i < tree.nodes.size(); ++i) names[i] = tree.coord_name(int(i));
    json meta{{"target", target}, {"family", g.family}, {"depth", g.depth},
              {"branching", g.branching}};
    if (target == "lp") {
      int pp = p > 0 ? p : lp_parameter(g.depth, eps);
      meta["p"] = pp;
      meta["norm"] = "p:" + std::to_string(pp);
      if (p <= 0) meta["eps"] = eps;
    } else {
      meta["norm"] = "sup";
    }
    write_text_atomic(out, embedding_json(images, names, meta).dump(1) + "\n");
    std::cout << "embedded " << g.n << " vertices, " << tree.nodes.size() << " coordinates -> "
              << out << "\n";
    return 0;
  }

  if (target == "l1") {
    if (g.family != "diamond") throw validation_error("the Bernoulli embedding needs a diamond graph");
    std::vector<std::vector<Rat>> m(g.n, std::vector<Rat>(g.n, Rat(0)));
    parallel_for(g.n, threads, [&](int i) {
      for (int j = 0; j < g.n; ++j)
        if (j != i) m[i][j] = l1_distance_closed(g.depth, g.codes[i], g.codes[j]).to_rat();
    });
    write_text_atomic(out, matrix_csv(m));
    std::cout << "embedded distances " << g.n << "x" << g.n << " -> " << out << "\n";
    return 0;
  }

  if (target == "transfer") {
    if (p < 1) throw validation_error("transfer needs --p");
    if (g.family != "diamond") throw validation_error("transfer targets a diamond graph");
    if (g.depth > 3)
      throw validation_error("transfer distances exceed the 24-bit atom guard beyond depth 3");
    BaseEmbedding base;
    if (base_spec == "frechet") {
      base = frechet_base(g.depth);
    } else {
      json jb;
      try {
        jb = json::parse(read_text(base_spec));
      } catch (const json::exception& e) {
        throw validation_error("cannot parse base '" + base_spec + "': " + e.what());
      }
      base.graph = build_coded(g.depth, 2);
      if (!jb.contains("_meta") || !jb.at("_meta").contains("norm"))
        throw validation_error("base embedding needs _meta.norm (sup or l1)");
      base.ynorm = parse_norm(jb.at("_meta").at("norm").get<std::string>());
      base.images = embedding_from_json(jb, base.graph.n).images;
      certify_base(base);
    }
    BundleGraph canonical = build_coded(g.depth, g.branching);
    if (g.n != canonical.n || !(g.codes == canonical.codes))
      throw validation_error("transfer needs the canonical coded graph; rebuild with --mode coded");
    TransferredEmbedding emb = transfer(base, g.branching);
    std::vector<std::vector<Rat>> pow = transfer_pair_powers(emb, p, threads);
    write_text_atomic(out, pairs_csv(pow, p));
    std::cout << "transferred with " << emb.bits << " selector bits, base c=" << base.c.str()
              << " -> " << out << "\n";
    return 0;
  }

  throw validation_error("unknown embed target '" + target + "'");
}

int run_distort(const std::string& graph_path, const std::string& embedding_path,
                const std::string& edist_path, const std::string& norm_str,
                const std::string& out, int threads) {
  BundleGraph g = load_graph(graph_path);
  NormSpec norm = parse_norm(norm_str);
  DistanceMatrix dm = bfs_all_pairs(g, threads);
  PairClassifier vertical = vertical_classifier(g, dm);

  DistortionReport rep;
  std::string target = "?";
  if (!embedding_path.empty()) {
    json je;
    try {
      je = json::parse(read_text(embedding_path));
    } catch (const json::exception& e) {
      throw validation_error("cannot parse '" + embedding_path + "': " + e.what());
    }
    LoadedEmbedding emb = embedding_from_json(je, g.n);
    if (emb.meta.contains("target")) target = emb.meta.at("target").get<std::string>();
    rep = evaluate(emb.images, dm, norm, vertical, threads);
  } else {
    std::string text = read_text(edist_path);
    if (text.rfind("i,j,p,pow,dist", 0) == 0) {
      LoadedPairs pairs = pairs_from_csv(text);
      if (norm.kind != NormSpec::Kind::p || norm.p != pairs.p)
        throw validation_error("pair file holds p=" + std::to_string(pairs.p) +
                               " powers; pass --norm p:" + std::to_string(pairs.p));
      if (int(pairs.pow.size()) != g.n) throw validation_error("pair file size mismatch");
      target = "transfer";
      rep = evaluate_powers(pairs.pow, dm, norm, vertical, threads);
    } else {
      std::vector<std::vector<Rat>> m = matrix_from_csv(text);
      if (norm.kind == NormSpec::Kind::p)
        throw validation_error("matrix input carries plain distances; use --norm sup or l1");
      if (int(m.size()) != g.n) throw validation_error("distance matrix size mismatch");
      target = "l1";
      rep = evaluate_powers(m, dm, norm, vertical, threads);
    }
  }

  json config{{"family", g.family}, {"depth", g.depth}, {"branching", g.branching},
              {"target", target}, {"norm", norm.str()}};
  double upper = upper_bound_for(target, norm, g.depth);
  write_text_atomic(out, report_json(rep, config, upper).dump(1) + "\n");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", rep.distortion);
  std::cout << "distortion=" << (rep.finite ? buf : "inf") << " norm=" << norm.str() << " -> "
            << out << "\n";
  return 0;
}

int run_bounds(double p, double gamma, double rho, int kmax, double c1, const std::string& kind,
               const std::string& out) {
  ModulusSpec mod;
  mod.p = p;
  if (kind == "power") {
    mod.kind = ModulusSpec::Kind::power;
    mod.gamma = gamma;
  } else if (kind == "lp-exact") {
    mod.kind = ModulusSpec::Kind::lp_exact;
  } else {
    throw validation_error("modulus kind must be power or lp-exact");
  }
  BoundCurve curve = lower_bound_curve(mod, rho, kmax, c1);
  write_text_atomic(out, curve_csv(curve));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", curve.c.back());
  std::cout << "C_" << kmax << "=" << buf << " -> " << out << "\n";
  return 0;
}

int run_lemma51(int dim, double p, long long samples, uint64_t seed, int threads) {
  Lemma51Stats stats = check_lemma51(dim, p, samples, seed, threads);
  json j{{"dim", dim},
         {"p", p},
         {"samples", stats.samples},
         {"in_bar", stats.in_bar},
         {"violations", stats.violations}};
  std::cout << j.dump() << "\n";
  if (stats.violations > 0)
    throw invariant_error("barycenter set escaped the midpoint set on " +
                          std::to_string(stats.violations) + " samples");
  return 0;
}

int run_report(const std::vector<std::string>& inputs, const std::vector<std::string>& curve_specs,
               const std::string& out, const std::string& csv_out) {
  std::vector<ReportRow> rows;
  for (const std::string& path : inputs) {
    json j;
    try {
      j = json::parse(read_text(path));
    } catch (const json::exception& e) {
      throw validation_error("cannot parse '" + path + "': " + e.what());
    }
    rows.push_back(report_row(j));
  }
  std::vector<NamedCurve> curves;
  for (const std::string& spec : curve_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw validation_error("curve spec must look like P=FILE, got '" + spec + "'");
    NamedCurve nc;
    try {
      nc.p = std::stod(spec.substr(0, eq));
    } catch (const std::logic_error&) {
      throw validation_error("cannot parse curve exponent in '" + spec + "'");
    }
    nc.curve = curve_from_csv(read_text(spec.substr(eq + 1)));
    curves.push_back(nc);
  }
  write_text_atomic(out, report_markdown(rows, curves));
  if (!csv_out.empty()) write_text_atomic(csv_out, report_table_csv(rows, curves));
  std::cout << rows.size() << " rows, " << curves.size() << " curves -> " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated countably-branching graphs: metrics, embeddings, distortion bounds"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));

  auto* build = app.add_subcommand("build", "construct a graph and write it as JSON");
  std::string family = "diamond", mode = "coded", out;
  int depth = 1, branch = 2;
  build->add_option("--family", family, "diamond, laakso, or parasol");
  build->add_option("--depth", depth, "substitution depth")->required();
  build->add_option("--branch", branch, "fan width")->required();
  build->add_option("--mode", mode, "coded or recursive");
  build->add_option("-o,--out", out, "output graph JSON")->required();

  auto* viso = app.add_subcommand("verify-iso", "check coded and recursive diamonds agree");
  int vdepth = 1, vbranch = 2;
  viso->add_option("--depth", vdepth, "substitution depth")->required();
  viso->add_option("--branch", vbranch, "fan width")->required();

  auto* dist = app.add_subcommand("dist", "all-pairs distances as CSV");
  std::string dgraph, dmethod = "bfs", dout;
  dist->add_option("--graph", dgraph, "graph JSON")->required();
  dist->add_option("--method", dmethod, "bfs or closed");
  dist->add_option("-o,--out", dout, "output CSV")->required();

  auto* embed = app.add_subcommand("embed", "compute an embedding or its distance table");
  std::string etarget, egraph, ebase = "frechet", eout;
  int ep = 0;
  double eeps = 0.6;
  embed->add_option("--target", etarget, "c0, lp, l1, or transfer")->required();
  embed->add_option("--graph", egraph, "graph JSON")->required();
  embed->add_option("--p", ep, "exponent (lp reading, transfer)");
  embed->add_option("--eps", eeps, "accuracy for the lp exponent choice");
  embed->add_option("--base", ebase, "transfer base: frechet or an embedding JSON");
  embed->add_option("-o,--out", eout, "output file")->required();

  auto* distort = app.add_subcommand("distort", "measure bi-Lipschitz constants");
  std::string ograph, oembed, oedist, onorm = "sup", oout;
  distort->add_option("--graph", ograph, "graph JSON")->required();
  auto* oe = distort->add_option("--embedding", oembed, "embedding JSON");
  auto* od = distort->add_option("--edist", oedist, "embedded distance CSV");
  distort->add_option("--norm", onorm, "sup, l1, or p:P");
  distort->add_option("-o,--out", oout, "output report JSON")->required();
  oe->excludes(od);

  auto* bounds = app.add_subcommand("bounds", "distortion growth lower-bound curve");
  double bp = 2, bgamma = 1, brho = 1, bc1 = 1;
  int bkmax = 20;
  std::string bkind = "power", bout;
  bounds->add_option("--p", bp, "modulus power")->required();
  bounds->add_option("--gamma", bgamma, "modulus coefficient");
  bounds->add_option("--rho", brho, "base graph reach");
  bounds->add_option("--kmax", bkmax, "curve length");
  bounds->add_option("--c1", bc1, "starting distortion");
  bounds->add_option("--kind", bkind, "power or lp-exact");
  bounds->add_option("-o,--out", bout, "output CSV")->required();

  auto* lemma = app.add_subcommand("check-lemma51", "randomized barycenter inclusion check");
  int ldim = 8;
  double lp = 2;
  long long lsamples = 10000;
  uint64_t lseed = 1729;
  lemma->add_option("--dim", ldim, "ambient dimension");
  lemma->add_option("--p", lp, "norm exponent");
  lemma->add_option("--samples", lsamples, "sample count");
  lemma->add_option("--seed", lseed, "master seed");

  auto* report = app.add_subcommand("report", "assemble measured vs. bound tables");
  std::vector<std::string> rin, rcurves;
  std::string rout, rcsv;
  report->add_option("--in", rin, "distortion report JSON (repeatable)");
  report->add_option("--curve", rcurves, "P=curve.csv (repeatable)");
  report->add_option("-o,--out", rout, "output markdown")->required();
  report->add_option("--csv", rcsv, "plot-ready CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    fail_json("validation_error", e.what());
    return 1;
  }

  try {
    if (*build) return run_build(family, depth, branch, mode, out);
    if (*viso) return run_verify_iso(vdepth, vbranch);
    if (*dist) return run_dist(dgraph, dmethod, dout, threads);
    if (*embed) return run_embed(etarget, egraph, ep, eeps, ebase, eout, threads);
    if (*distort) {
      if (oembed.empty() == oedist.empty())
        throw validation_error("pass exactly one of --embedding or --edist");
      return run_distort(ograph, oembed, oedist, onorm, oout, threads);
    }
    if (*bounds) return run_bounds(bp, bgamma, brho, bkmax, bc1, bkind, bout);
    if (*lemma) return run_lemma51(ldim, lp, lsamples, lseed, threads);
    if (*report) return run_report(rin, rcurves, rout, rcsv);
    throw validation_error("unknown subcommand");
  } catch (const validation_error& e) {
    fail_json("validation_error", e.what());
    return 1;
  } catch (const invariant_error& e) {
    fail_json("invariant_error", e.what());
    return 2;
  } catch (const std::exception& e) {
    fail_json("invariant_error", e.what());
    return 2;
  }
}
