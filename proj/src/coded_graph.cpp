#include "oslash/coded_graph.hpp"

#include <algorithm>
#include <map>

namespace oslash {

UpDown up_down_edge(const VertexCode& v, int k) {
  if (k < 1) throw validation_error("up_down_edge needs depth >= 1");
  if (int(v.elems.size()) != k || !v.r.in_level(k))
    throw validation_error("up_down_edge expects a deepest-level vertex: " + v.str());
  int i_minus = 0, i_plus = 0;
  for (int i = 1; i <= k - 1; ++i)
    (v.r.digit(i) == 1 ? i_minus : i_plus) = i;

  Dyadic step(1, k);
  UpDown out;
  out.down = VertexCode(std::vector<int>(v.elems.begin(), v.elems.begin() + i_minus), v.r - step);
  out.up = VertexCode(std::vector<int>(v.elems.begin(), v.elems.begin() + i_plus), v.r + step);
  return out;
}

BundleGraph build_coded(int k, int w) {
  if (k < 0 || k > 30) throw validation_error("depth out of range");
  if (w < 1) throw validation_error("branching must be positive");

  BundleGraph g;
  g.family = "diamond";
  g.depth = k;
  g.branching = w;
  g.height = 1LL << k;

  // all label sets with gaps <= w, paired with every height of their level
  std::vector<std::vector<int>> sets{{}};
  for (size_t i = 0; i < sets.size(); ++i) {
    std::vector<int> a = sets[i];  // copy: push_back below may reallocate
    if (int(a.size()) == k) continue;
    int last = a.empty() ? 0 : a.back();
    for (int gap = 1; gap <= w; ++gap) {
      a.push_back(last + gap);
      sets.push_back(a);
      a.pop_back();
    }
  }
  for (const auto& a : sets) {
    int m = int(a.size());
    if (m == 0) {
      g.codes.emplace_back(a, Dyadic(0));
      g.codes.emplace_back(a, Dyadic(1));
    } else {
      for (i64 num = 1; num < (i64(1) << m); num += 2) g.codes.emplace_back(a, Dyadic(num, m));
    }
  }
  std::sort(g.codes.begin(), g.codes.end());
  g.n = int(g.codes.size());

  std::map<VertexCode, int> index;
  for (int v = 0; v < g.n; ++v) index[g.codes[v]] = v;
  g.bottom = index.at(VertexCode({}, Dyadic(0)));
  g.top = index.at(VertexCode({}, Dyadic(1)));

  if (k == 0) {
    g.add_edge(0, 1);
  } else {
    for (int v = 0; v < g.n; ++v) {
      if (int(g.codes[v].elems.size()) != k) continue;
      UpDown nb = up_down_edge(g.codes[v], k);
      g.add_edge(v, index.at(nb.down));
      g.add_edge(v, index.at(nb.up));
    }
  }
  g.finalize();
  return g;
}

}  // namespace oslash
