#include "oslash/bundle_graph.hpp"

#include <algorithm>
#include <deque>

namespace oslash {

void BundleGraph::add_edge(int a, int b) {
  if (a == b) throw validation_error("self-loop edge");
  if (a < 0 || b < 0 || a >= n || b >= n) throw invariant_error("edge endpoint out of range");
  if (a > b) std::swap(a, b);
  edges.emplace_back(a, b);
}

void BundleGraph::finalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  adj.assign(n, {});
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
}

std::vector<int> BundleGraph::distances_from(int src) const {
  if (adj.empty() && n > 0) throw invariant_error("graph not finalized");
  std::vector<int> dist(n, -1);
  std::deque<int> q;
  dist[src] = 0;
  q.push_back(src);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int u : adj[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
  }
  return dist;
}

void BundleSpec::validate() const {
  if (family != "diamond" && family != "laakso" && family != "parasol" && family != "custom-base")
    throw validation_error("unknown family '" + family + "'");
  if (depth < 1 || depth > 6) throw validation_error("depth must be in 1..6");
  if (family == "custom-base") {
    if (!base) throw validation_error("custom-base spec without a base graph");
  } else if (branching < 2 || branching > 6) {
    throw validation_error("branching must be in 2..6");
  }
}

namespace {

// DFS census of simple bottom-top paths. Returns (first length seen, a second
// distinct length if any, number of paths walked, cap hit?).
struct PathCensus {
  long long first_len = -1;
  long long other_len = -1;
  long long count = 0;
  bool capped = false;
};

void walk_paths(const BundleGraph& g, int v, long long len, std::vector<char>& used,
                long long cap, PathCensus& out) {
  if (out.capped || out.other_len >= 0) return;
  if (v == g.top) {
    ++out.count;
    if (out.first_len < 0)
      out.first_len = len;
    else if (len != out.first_len)
      out.other_len = len;
    if (out.count >= cap) out.capped = true;
    return;
  }
  used[v] = 1;
  for (int u : g.adj[v])
    if (!used[u]) walk_paths(g, u, len + 1, used, cap, out);
  used[v] = 0;
}

}  // namespace

BundleCheck check_bundle(const BundleGraph& g, long long path_cap) {
  BundleCheck res;
  if (g.n < 2 || g.bottom == g.top) {
    res.ok = false;
    res.witness = "fewer than two distinct terminals";
    return res;
  }
  auto down = g.distances_from(g.bottom);
  auto up = g.distances_from(g.top);
  long long h = down[g.top];
  if (h < 0) {
    res.ok = false;
    res.witness = "top not reachable from bottom";
    return res;
  }
  for (int v = 0; v < g.n; ++v) {
    if (down[v] < 0 || up[v] < 0) {
      res.ok = false;
      res.witness = "vertex " + std::to_string(v) + " disconnected from a terminal";
      return res;
    }
    if (down[v] + up[v] != h) {
      res.ok = false;
      res.witness = "vertex " + std::to_string(v) + " lies on no geodesic: d(bottom,v)=" +
                    std::to_string(down[v]) + ", d(v,top)=" + std::to_string(up[v]) +
                    ", height=" + std::to_string(h);
      return res;
    }
  }
  for (auto [a, b] : g.edges)
    if (std::abs(down[a] - down[b]) != 1) {
      res.ok = false;
      res.witness = "edge (" + std::to_string(a) + "," + std::to_string(b) +
                    ") joins levels " + std::to_string(down[a]) + " and " + std::to_string(down[b]);
      return res;
    }

  PathCensus census;
  std::vector<char> used(g.n, 0);
  walk_paths(g, g.bottom, 0, used, path_cap, census);
  res.exhaustive = !census.capped;
  if (census.other_len >= 0) {
    res.ok = false;
    res.witness = "simple terminal paths of lengths " + std::to_string(census.first_len) +
                  " and " + std::to_string(census.other_len);
  }
  return res;
}

void require_bundle(const BundleGraph& g, const char* role) {
  auto chk = check_bundle(g);
  if (!chk.ok) throw validation_error(std::string(role) + " is not a bundle: " + chk.witness);
}

BundleGraph make_diamond_base(int w) {
  if (w < 2) throw validation_error("diamond base needs branching >= 2");
  BundleGraph g;
  g.family = "diamond";
  g.depth = 1;
  g.branching = w;
  g.n = 2 + w;
  g.bottom = 0;
  g.top = 1;
  g.height = 2;
  for (int j = 0; j < w; ++j) {
    g.add_edge(0, 2 + j);
    g.add_edge(2 + j, 1);
  }
  g.finalize();
  return g;
}

BundleGraph make_laakso_base(int w) {
  if (w < 2) throw validation_error("laakso base needs branching >= 2");
  BundleGraph g;
  g.family = "laakso";
  g.depth = 1;
  g.branching = w;
  g.n = 4 + w;  // bottom, top, lower neck, upper neck, fan
  g.bottom = 0;
  g.top = 1;
  g.height = 4;
  int lo = 2, hi = 3;
  g.add_edge(0, lo);
  for (int j = 0; j < w; ++j) {
    g.add_edge(lo, 4 + j);
    g.add_edge(4 + j, hi);
  }
  g.add_edge(hi, 1);
  g.finalize();
  return g;
}

BundleGraph make_parasol_base(int w) {
  if (w < 2) throw validation_error("parasol base needs branching >= 2");
  BundleGraph g;
  g.family = "parasol";
  g.depth = 1;
  g.branching = w;
  g.n = 3 + w;  // bottom, top, neck, fan two steps above the bottom
  g.bottom = 0;
  g.top = 1;
  g.height = 3;
  int neck = 2;
  g.add_edge(0, neck);
  for (int j = 0; j < w; ++j) {
    g.add_edge(neck, 3 + j);
    g.add_edge(3 + j, 1);
  }
  g.finalize();
  return g;
}

BundleGraph make_base(const std::string& family, int w) {
  if (family == "diamond") return make_diamond_base(w);
  if (family == "laakso") return make_laakso_base(w);
  if (family == "parasol") return make_parasol_base(w);
  throw validation_error("no built-in base for family '" + family + "'");
}

}  // namespace oslash
