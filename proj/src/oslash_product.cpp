#include "oslash/oslash_product.hpp"

namespace oslash {

BundleGraph oslash_product(const BundleGraph& h, const BundleGraph& g) {
  require_bundle(h, "left factor");
  require_bundle(g, "right factor");

  auto hlev = h.levels();
  auto glev = g.levels();
  std::vector<int> internal;
  for (int v = 0; v < g.n; ++v)
    if (v != g.bottom && v != g.top) internal.push_back(v);
  std::vector<int> islot(g.n, -1);
  for (size_t m = 0; m < internal.size(); ++m) islot[internal[m]] = int(m);

  BundleGraph out;
  out.n = h.n + int(h.edges.size()) * int(internal.size());
  out.bottom = h.bottom;
  out.top = h.top;
  out.height = h.height * g.height;
  out.family = "custom-base";

  for (size_t e = 0; e < h.edges.size(); ++e) {
    auto [a, b] = h.edges[e];
    int lo = hlev[a] < hlev[b] ? a : b;  // check_bundle guarantees one-level edges
    int hi = lo == a ? b : a;
    auto place = [&](int gv) {
      if (gv == g.bottom) return lo;
      if (gv == g.top) return hi;
      return h.n + int(e) * int(internal.size()) + islot[gv];
    };
    for (auto [x, y] : g.edges) out.add_edge(place(x), place(y));
  }
  out.finalize();
  return out;
}

BundleGraph oslash_power(const BundleGraph& g, int k) {
  if (k < 0) throw validation_error("negative substitution power");
  if (k == 0) {
    BundleGraph e;
    e.family = "custom-base";
    e.n = 2;
    e.bottom = 0;
    e.top = 1;
    e.height = 1;
    e.add_edge(0, 1);
    e.finalize();
    return e;
  }
  BundleGraph out = g;
  for (int i = 1; i < k; ++i) out = oslash_product(out, g);
  return out;
}

namespace {

// Inductive midpoint labelling: a substituted midpoint j on an edge {u,v}
// takes the label set of the deeper endpoint extended past its maximum, at
// the average height fraction of the two endpoints.
std::vector<VertexCode> label_step(const BundleGraph& prev, const BundleGraph& next, int w) {
  std::vector<VertexCode> codes(next.n);
  for (int v = 0; v < prev.n; ++v) codes[v] = prev.codes[v];
  for (size_t e = 0; e < prev.edges.size(); ++e) {
    auto [a, b] = prev.edges[e];
    const VertexCode& ca = prev.codes[a];
    const VertexCode& cb = prev.codes[b];
    const VertexCode& deep = ca.elems.size() >= cb.elems.size() ? ca : cb;
    Dyadic mid = (ca.r + cb.r).half();
    for (int j = 1; j <= w; ++j) {
      std::vector<int> elems = deep.elems;
      elems.push_back(deep.max_elem() + j);
      codes[prev.n + int(e) * w + (j - 1)] = VertexCode(std::move(elems), mid);
    }
  }
  return codes;
}

}  // namespace

BundleGraph build_recursive(const BundleSpec& spec) {
  spec.validate();
  BundleGraph base = spec.family == "custom-base" ? *spec.base : make_base(spec.family, spec.branching);
  require_bundle(base, "base");

  BundleGraph g = base;
  if (spec.family == "diamond") {
    g.codes.resize(g.n);
    g.codes[g.bottom] = VertexCode({}, Dyadic(0));
    g.codes[g.top] = VertexCode({}, Dyadic(1));
    for (int j = 1; j <= spec.branching; ++j) g.codes[1 + j] = VertexCode({j}, Dyadic(1, 1));
  }
  for (int step = 2; step <= spec.depth; ++step) {
    BundleGraph next = oslash_product(g, base);
    if (spec.family == "diamond") next.codes = label_step(g, next, spec.branching);
    g = std::move(next);
  }
  g.family = spec.family;
  g.depth = spec.depth;
  g.branching = spec.family == "custom-base" ? 0 : spec.branching;
  return g;
}

}  // namespace oslash
