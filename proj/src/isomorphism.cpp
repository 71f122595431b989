#include "oslash/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace oslash {

namespace {

std::string degree_sequence(const BundleGraph& g) {
  std::vector<int> deg;
  for (const auto& a : g.adj) deg.push_back(int(a.size()));
  std::sort(deg.begin(), deg.end());
  std::string s = "[";
  for (size_t i = 0; i < deg.size(); ++i) s += (i ? "," : "") + std::to_string(deg[i]);
  return s + "]";
}

bool verify_mapping(const BundleGraph& a, const BundleGraph& b, const std::vector<int>& map,
                    std::string& why) {
  std::vector<char> hit(b.n, 0);
  for (int v = 0; v < a.n; ++v) {
    if (map[v] < 0 || map[v] >= b.n || hit[map[v]]) {
      why = "mapping is not a bijection at vertex " + std::to_string(v);
      return false;
    }
    hit[map[v]] = 1;
  }
  std::set<std::pair<int, int>> be(b.edges.begin(), b.edges.end());
  for (auto [x, y] : a.edges) {
    int u = std::min(map[x], map[y]), v = std::max(map[x], map[y]);
    if (!be.count({u, v})) {
      why = "edge (" + std::to_string(x) + "," + std::to_string(y) + ") has no image";
      return false;
    }
  }
  if (a.edges.size() != b.edges.size()) {
    why = "edge counts differ";
    return false;
  }
  return true;
}

// joint colour refinement: seed from (level-from-bottom, level-from-top,
// degree, terminal tag), then repeatedly fold in the neighbour colour
// multiset. Both graphs share the colour tables, so equal ids mean equal
// structural colours across graphs.
std::pair<std::vector<int>, std::vector<int>> refine_colors(const BundleGraph& a,
                                                            const BundleGraph& b) {
  std::map<std::tuple<long long, long long, int, int>, int> seed;
  auto seed_of = [&](const BundleGraph& g) {
    auto down = g.distances_from(g.bottom);
    auto up = g.distances_from(g.top);
    std::vector<int> color(g.n);
    for (int v = 0; v < g.n; ++v) {
      int tag = v == g.bottom ? 1 : v == g.top ? 2 : 0;
      auto key = std::make_tuple(down[v], up[v], int(g.adj[v].size()), tag);
      color[v] = seed.emplace(key, int(seed.size())).first->second;
    }
    return color;
  };
  std::vector<int> ca = seed_of(a), cb = seed_of(b);

  for (int round = 0; round < a.n + b.n; ++round) {
    std::map<std::pair<int, std::vector<int>>, int> next;
    auto step = [&](const BundleGraph& g, const std::vector<int>& color) {
      std::vector<int> nc(g.n);
      for (int v = 0; v < g.n; ++v) {
        std::vector<int> nb;
        for (int u : g.adj[v]) nb.push_back(color[u]);
        std::sort(nb.begin(), nb.end());
        nc[v] = next.emplace(std::make_pair(color[v], std::move(nb)), int(next.size())).first->second;
      }
      return nc;
    };
    std::vector<int> na = step(a, ca), nb = step(b, cb);
    if (na == ca && nb == cb) break;
    ca = std::move(na);
    cb = std::move(nb);
  }
  return {std::move(ca), std::move(cb)};
}

bool backtrack(const BundleGraph& a, const BundleGraph& b, const std::vector<int>& order,
               size_t pos, const std::vector<std::vector<int>>& cand,
               std::vector<std::set<int>>& badj, std::vector<int>& map, std::vector<char>& used) {
  if (pos == order.size()) return true;
  int v = order[pos];
  for (int w : cand[v]) {
    if (used[w]) continue;
    bool fits = true;
    for (int u : a.adj[v])
      if (map[u] >= 0 && !badj[w].count(map[u])) {
        fits = false;
        break;
      }
    if (!fits) continue;
    map[v] = w;
    used[w] = 1;
    if (backtrack(a, b, order, pos + 1, cand, badj, map, used)) return true;
    map[v] = -1;
    used[w] = 0;
  }
  return false;
}

}  // namespace

IsoResult check_isomorphism(const BundleGraph& a, const BundleGraph& b) {
  IsoResult res;
  if (a.n != b.n) {
    res.witness = "vertex counts " + std::to_string(a.n) + " vs " + std::to_string(b.n);
    return res;
  }
  if (a.edges.size() != b.edges.size()) {
    res.witness = "edge counts " + std::to_string(a.edges.size()) + " vs " + std::to_string(b.edges.size());
    return res;
  }

  if (a.has_codes() && b.has_codes()) {
    std::map<VertexCode, int> bi;
    for (int v = 0; v < b.n; ++v) bi[b.codes[v]] = v;
    std::vector<int> map(a.n, -1);
    for (int v = 0; v < a.n; ++v) {
      auto it = bi.find(a.codes[v]);
      if (it == bi.end()) {
        res.witness = "code " + a.codes[v].str() + " absent from the second graph";
        return res;
      }
      map[v] = it->second;
    }
    std::string why;
    if (!verify_mapping(a, b, map, why)) {
      res.witness = "code map fails: " + why;
      return res;
    }
    res.mapping = std::move(map);
    return res;
  }

  auto [ca, cb] = refine_colors(a, b);
  std::map<int, int> ha, hb;
  for (int c : ca) ++ha[c];
  for (int c : cb) ++hb[c];
  if (ha != hb) {
    res.witness = "colour refinement differs; degree sequences " + degree_sequence(a) + " vs " +
                  degree_sequence(b);
    return res;
  }

  std::vector<std::vector<int>> cand(a.n);
  for (int v = 0; v < a.n; ++v)
    for (int w = 0; w < b.n; ++w)
      if (ca[v] == cb[w]) cand[v].push_back(w);

  std::vector<int> order(a.n);
  for (int v = 0; v < a.n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return cand[x].size() != cand[y].size() ? cand[x].size() < cand[y].size() : x < y; });

  std::vector<std::set<int>> badj(b.n);
  for (auto [x, y] : b.edges) {
    badj[x].insert(y);
    badj[y].insert(x);
  }
  std::vector<int> map(a.n, -1);
  std::vector<char> used(b.n, 0);
  if (!backtrack(a, b, order, 0, cand, badj, map, used)) {
    res.witness = "no adjacency-preserving bijection extends the colour classes";
    return res;
  }
  std::string why;
  if (!verify_mapping(a, b, map, why)) throw invariant_error("isomorphism search returned a bad map: " + why);
  res.mapping = std::move(map);
  return res;
}

}  // namespace oslash
