#include "oslash/metric.hpp"

#include <deque>

#include "oslash/worker.hpp"

namespace oslash {

DistanceMatrix bfs_all_pairs(const BundleGraph& g, int threads) {
  if (g.adj.empty() && g.n > 0) throw invariant_error("graph not finalized");
  if (g.n > 20000) throw validation_error("all-pairs matrix over 20000 vertices exceeds the memory guard");
  DistanceMatrix dm(g.n);
  parallel_for(g.n, threads, [&](int src) {
    int32_t* row = &dm.d[size_t(src) * g.n];
    for (int i = 0; i < g.n; ++i) row[i] = -1;
    std::deque<int> q;
    row[src] = 0;
    q.push_back(src);
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int u : g.adj[v])
        if (row[u] < 0) {
          row[u] = row[v] + 1;
          q.push_back(u);
        }
    }
  });
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (dm.at(i, j) < 0) throw validation_error("graph is disconnected");
  return dm;
}

bool vertical_path_test(const BundleGraph& g, int x, int y) {
  if (!g.has_codes()) throw validation_error("vertical test needs a labelled graph");
  if (x == y) return true;
  int lo = x, hi = y;
  if (g.codes[lo].r > g.codes[hi].r) std::swap(lo, hi);
  if (g.codes[lo].r == g.codes[hi].r) return false;
  std::vector<char> seen(g.n, 0);
  std::deque<int> q;
  seen[lo] = 1;
  q.push_back(lo);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (v == hi) return true;
    for (int u : g.adj[v])
      if (!seen[u] && g.codes[u].r > g.codes[v].r) {
        seen[u] = 1;
        q.push_back(u);
      }
  }
  return false;
}

i64 closed_form_distance(const VertexCode& x, const VertexCode& y, int k) {
  if (k < 0 || k > 30) throw validation_error("depth out of range");
  x.validate(k);
  y.validate(k);
  if (x == y) return 0;

  const Dyadic half(1, 1);
  const Dyadic& r = x.r;
  const Dyadic& s = y.r;

  if (x.is_terminal() || y.is_terminal() || x.min_elem() != y.min_elem()) {
    if (x.is_terminal() || y.is_terminal()) return (r - s).abs().scaled(k);
    // crossing pairs route through a terminal
    Dyadic via_top = Dyadic(2) - r - s;
    Dyadic via_bottom = r + s;
    if (r >= half && s >= half) return via_top.scaled(k);
    if (r <= half && s <= half) return via_bottom.scaled(k);
    return std::min(via_top, via_bottom).scaled(k);
  }

  int j = x.min_elem();
  if (r >= half && s >= half)
    return closed_form_distance(isometry_apply(Isometry::up, j, x), isometry_apply(Isometry::up, j, y), k - 1);
  if (r <= half && s <= half)
    return closed_form_distance(isometry_apply(Isometry::down, j, x), isometry_apply(Isometry::down, j, y), k - 1);
  // one strictly below the fan vertex, one strictly above: vertical through it
  return (r - s).abs().scaled(k);
}

VertexCode isometry_apply(Isometry kind, int j, const VertexCode& v) {
  const Dyadic half(1, 1);
  switch (kind) {
    case Isometry::down:
      if (v.is_bottom()) return v;
      if (v.min_elem() != j || v.r > half)
        throw validation_error("code " + v.str() + " is not in the lower part of fan " + std::to_string(j));
      return VertexCode(shift_out(j, v.elems), v.r.twice());
    case Isometry::up:
      if (v.is_top()) return v;
      if (v.min_elem() != j || v.r < half)
        throw validation_error("code " + v.str() + " is not in the upper part of fan " + std::to_string(j));
      return VertexCode(shift_out(j, v.elems), v.r.twice() - Dyadic(1));
    case Isometry::flip:
      if (v.is_top()) return VertexCode({}, Dyadic(0));
      if (v.min_elem() != j || v.r < half)
        throw validation_error("code " + v.str() + " is not in the upper part of fan " + std::to_string(j));
      return VertexCode(shift_out(j, v.elems), (Dyadic(1) - v.r).twice());
  }
  throw invariant_error("unreachable isometry kind");
}

}  // namespace oslash
